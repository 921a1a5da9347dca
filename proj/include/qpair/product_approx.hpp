#pragma once

// How well two unentangled qubits can approximate an entangled pair: Eve
// maximizes the overlap G, Alice picks the state minimizing Eve's best G.

#include <array>
#include <cstdint>

#include "qpair/quantum.hpp"

namespace qpair {

/// Alice's pair: moduli on the 3-sphere from theta, phases (0, 0, 0, alpha4).
struct AliceParams {
    std::array<double, 3> theta{};
    double alpha4 = 0.0;
};

/// Eve's product state: moduli (cos Phi, sin Phi) and (cos Omega, sin Omega)
/// with phases (phi1, phi2) and (omega1, omega2).
struct EveParams {
    double Phi = 0.0;
    double Omega = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
};

Pair alice_state(const AliceParams& a);
Pair eve_state(const EveParams& e);

/// Re <psi | psi1 (x) psi2>, in [-1, 1].
double g_function(const AliceParams& a, const EveParams& e);

/// Norm of the approximation error for overlap g: sqrt(2 (1 - g)).
double approximation_error(double g);

struct InnerResult {
    EveParams eve;
    double g_max = 0.0;
};

/// Multistart simplex ascent of G over Eve's six angles. Restart i draws its
/// start from a stream seeded by (seed, i), so more restarts never lower g_max.
InnerResult inner_maximize(const AliceParams& a, int restarts = 100, std::uint64_t seed = 42, unsigned threads = 1);

struct AnnealSchedule {
    double initial_temperature = 0.015;
    double cooling = 0.95;
    int temperature_steps = 200;
    int moves_per_step = 10;
    double initial_sigma = 0.5;  // rad; shrinks as sqrt(T / T0)
};

struct ApproxResult {
    double e_mm = 0.0;
    AliceParams alice;
    EveParams eve;
    double g_value = 0.0;
};

inline constexpr int kFinalInnerRestarts = 100;

/// Simulated annealing of Alice's parameters against inner_maximize.
/// `restarts` independent chains are run with `inner_restarts` per objective
/// evaluation; the best point found is re-evaluated with at least
/// kFinalInnerRestarts restarts.
ApproxResult outer_minimize(int restarts = 2, int inner_restarts = 10, std::uint64_t seed = 42,
                            unsigned threads = 1, const AnnealSchedule& schedule = {});

}  // namespace qpair
