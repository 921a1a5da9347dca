#include "qpair/product_approx.hpp"

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qpair/parallel.hpp"

namespace qpair {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

constexpr int kSimplexMaxIterations = 4000;
constexpr double kSimplexSizeTolerance = 1e-10;
constexpr double kSimplexInitialStep = 0.5;

// Domain tags keep the inner start streams apart from the annealing streams.
constexpr std::uint64_t kInnerStream = 0x1;
constexpr std::uint64_t kAnnealStream = 0x2;

std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64{seq};
}

EveParams from_array(const double* x) { return {x[0], x[1], x[2], x[3], x[4], x[5]}; }

struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;
using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter>;

VectorPtr make_vector(std::size_t n, double fill) {
    VectorPtr v{gsl_vector_alloc(n)};
    if (!v) throw std::bad_alloc();
    gsl_vector_set_all(v.get(), fill);
    return v;
}

double negative_g(const gsl_vector* x, void* params) {
    const auto* alice = static_cast<const AliceParams*>(params);
    return -g_function(*alice, from_array(gsl_vector_const_ptr(x, 0)));
}

InnerResult local_ascent(const AliceParams& a, const EveParams& start) {
    const std::array<double, 6> x0{start.Phi, start.Omega, start.phi1, start.phi2, start.omega1, start.omega2};
    VectorPtr x = make_vector(x0.size(), 0.0);
    for (std::size_t i = 0; i < x0.size(); ++i) gsl_vector_set(x.get(), i, x0[i]);
    VectorPtr step = make_vector(x0.size(), kSimplexInitialStep);

    AliceParams alice = a;
    gsl_multimin_function fn{&negative_g, x0.size(), &alice};
    MinimizerPtr m{gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, x0.size())};
    if (!m) throw std::bad_alloc();
    gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get());

    for (int it = 0; it < kSimplexMaxIterations; ++it) {
        if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), kSimplexSizeTolerance) == GSL_SUCCESS) break;
    }
    const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
    return {from_array(gsl_vector_const_ptr(best, 0)), -gsl_multimin_fminimizer_minimum(m.get())};
}

AliceParams perturb(const AliceParams& a, double sigma, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, sigma);
    AliceParams out = a;
    for (double& t : out.theta) t += n(rng);
    out.alpha4 += n(rng);
    return out;
}

}  // namespace

Pair alice_state(const AliceParams& a) {
    const auto [t1, t2, t3] = a.theta;
    const double s12 = std::sin(t1) * std::sin(t2);
    return Pair{{std::cos(t1), std::sin(t1) * std::cos(t2), s12 * std::cos(t3),
                 s12 * std::sin(t3) * std::exp(kI * a.alpha4)}};
}

Pair eve_state(const EveParams& e) {
    const Qubit first{{std::cos(e.Phi) * std::exp(kI * e.phi1), std::sin(e.Phi) * std::exp(kI * e.phi2)}};
    const Qubit second{{std::cos(e.Omega) * std::exp(kI * e.omega1), std::sin(e.Omega) * std::exp(kI * e.omega2)}};
    return kron(first, second);
}

double g_function(const AliceParams& a, const EveParams& e) {
    const auto [t1, t2, t3] = a.theta;
    const double r1 = std::cos(t1);
    const double r2 = std::sin(t1) * std::cos(t2);
    const double r3 = std::sin(t1) * std::sin(t2) * std::cos(t3);
    const double r4 = std::sin(t1) * std::sin(t2) * std::sin(t3);
    return std::cos(e.Phi) * (std::cos(e.Omega) * std::cos(-e.phi1 - e.omega1) * r1 +
                              std::sin(e.Omega) * std::cos(-e.phi1 - e.omega2) * r2) +
           std::sin(e.Phi) * (std::cos(e.Omega) * std::cos(-e.phi2 - e.omega1) * r3 +
                              std::sin(e.Omega) * std::cos(a.alpha4 - e.phi2 - e.omega2) * r4);
}

double approximation_error(double g) {
    if (!(g >= -1.0 - kTolerance && g <= 1.0 + kTolerance)) throw std::domain_error("approximation_error: g outside [-1,1]");
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - g)));
}

InnerResult inner_maximize(const AliceParams& a, int restarts, std::uint64_t seed, unsigned threads) {
    if (restarts < 1) throw std::invalid_argument("inner_maximize: restarts must be >= 1");
    const auto results = parallel_map<InnerResult>(static_cast<std::size_t>(restarts), threads, [&](std::size_t i) {
        auto rng = derived_rng(seed, kInnerStream, i);
        std::uniform_real_distribution<double> modulus(0.0, kPi / 2);
        std::uniform_real_distribution<double> phase(-kPi, kPi);
        const EveParams start{modulus(rng), modulus(rng), phase(rng), phase(rng), phase(rng), phase(rng)};
        return local_ascent(a, start);
    });
    InnerResult best = results.front();
    for (const InnerResult& r : results)
        if (r.g_max > best.g_max) best = r;
    return best;
}

ApproxResult outer_minimize(int restarts, int inner_restarts, std::uint64_t seed, unsigned threads,
                            const AnnealSchedule& schedule) {
    if (restarts < 1 || inner_restarts < 1) throw std::invalid_argument("outer_minimize: counts must be >= 1");
    if (!(schedule.initial_temperature > 0.0) || !(schedule.cooling > 0.0 && schedule.cooling < 1.0) ||
        schedule.temperature_steps < 1 || schedule.moves_per_step < 1 || !(schedule.initial_sigma > 0.0))
        throw std::invalid_argument("outer_minimize: invalid annealing schedule");

    auto objective = [&](const AliceParams& a) { return inner_maximize(a, inner_restarts, seed, threads).g_max; };

    AliceParams best_alice;
    double best_g = std::numeric_limits<double>::infinity();

    for (int chain = 0; chain < restarts; ++chain) {
        auto rng = derived_rng(seed, kAnnealStream, static_cast<std::uint64_t>(chain));
        std::uniform_real_distribution<double> angle(0.0, kPi);
        std::uniform_real_distribution<double> phase(-kPi, kPi);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        AliceParams current{{angle(rng), angle(rng), phase(rng)}, phase(rng)};
        double current_g = objective(current);
        if (current_g < best_g) {
            best_g = current_g;
            best_alice = current;
        }

        double temperature = schedule.initial_temperature;
        for (int step = 0; step < schedule.temperature_steps; ++step) {
            const double sigma = schedule.initial_sigma * std::sqrt(temperature / schedule.initial_temperature);
            for (int move = 0; move < schedule.moves_per_step; ++move) {
                const AliceParams candidate = perturb(current, sigma, rng);
                const double g = objective(candidate);
                const double delta = g - current_g;
                if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature)) {
                    current = candidate;
                    current_g = g;
                    if (g < best_g) {
                        best_g = g;
                        best_alice = candidate;
                    }
                }
            }
            temperature *= schedule.cooling;
        }
    }

    const InnerResult final_inner =
        inner_maximize(best_alice, std::max(inner_restarts, kFinalInnerRestarts), seed, threads);
    return {approximation_error(final_inner.g_max), best_alice, final_inner.eve, final_inner.g_max};
}

}  // namespace qpair
