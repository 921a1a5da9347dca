#pragma once

// Exact enumeration of BB84 under the intercept-resend attack. Only sifted
// events (Alice's basis equals Bob's) are enumerated.

#include <array>

#include "qpair/gates.hpp"
#include "qpair/info.hpp"

namespace qpair {

/// Interception fraction xi in [0,1].
class Fraction {
public:
    explicit Fraction(double xi);
    double value() const { return xi_; }

private:
    double xi_;
};

struct SingleAttackOutcome {
    double info_bits = 0.0;  // per sifted bit
    double qber = 0.0;
};

SingleAttackOutcome scale_by_fraction(const SingleAttackOutcome& o, Fraction f);

/// How Eve picks her measurement basis for each intercepted qubit.
struct EveStrategy {
    bool measures = true;
    double p_z = 0.5;  // probability of measuring in Z

    static EveStrategy random_basis() { return {}; }
    static EveStrategy biased(double p_z) { return {true, p_z}; }
    static EveStrategy fixed(Basis b) { return {true, b == Basis::Z ? 1.0 : 0.0}; }
    static EveStrategy none() { return {false, 0.5}; }
};

struct IrEnumeration {
    SingleAttackOutcome outcome;
    /// Alice's bit versus Eve's full record (her basis, Alice's announced
    /// basis, her outcome).
    JointTable bit_table;
    /// Transmission state {0,1,+,-} versus Eve's record (her basis, outcome).
    JointTable state_table;
    std::array<double, 2> eve_marginal{};  // p(e)
    // p(E=0 | Alice sent bit 0) when Eve's basis is wrong / right.
    double p_eve0_given_wrong_basis = 0.0;
    double p_eve0_given_right_basis = 0.0;
    /// H(A,E) averaged over the basis-agreement contexts.
    double context_joint_entropy = 0.0;
};

IrEnumeration enumerate_ir_attack(const EveStrategy& eve = EveStrategy::random_basis());

/// (I(A,E), QBER) of the full intercept-resend attack; (0.5, 0.25).
SingleAttackOutcome ir_attack_exact();

struct MiPair {
    double bit_variable;    // I(A,E)
    double state_variable;  // I(Ã,E)
};

MiPair state_vs_bit_mi_equivalence(const EveStrategy& eve = EveStrategy::random_basis());

}  // namespace qpair
