#include "qpair/bb84.hpp"

#include <stdexcept>
#include <vector>

namespace qpair {

Fraction::Fraction(double xi) : xi_(xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("Fraction: xi outside [0,1]");
}

SingleAttackOutcome scale_by_fraction(const SingleAttackOutcome& o, Fraction f) {
    return {f.value() * o.info_bits, f.value() * o.qber};
}

namespace {

constexpr std::array<Basis, 2> kBases{Basis::Z, Basis::X};

int basis_index(Basis b) { return b == Basis::Z ? 0 : 1; }

}  // namespace

IrEnumeration enumerate_ir_attack(const EveStrategy& eve) {
    if (!(eve.p_z >= 0.0 && eve.p_z <= 1.0))
        throw std::invalid_argument("enumerate_ir_attack: p_z outside [0,1]");

    // Eve's record columns: measuring -> (eve basis, alice basis, e) for the
    // bit table and (eve basis, e) for the state table; passive -> only the
    // publicly announced alice basis, resp. a single column.
    const std::size_t bit_cols = eve.measures ? 8 : 2;
    const std::size_t state_cols = eve.measures ? 4 : 1;
    std::vector<double> bit_joint(2 * bit_cols, 0.0);
    std::vector<double> state_joint(4 * state_cols, 0.0);

    // context (eve basis, alice basis) -> p(a, e | context) for the averaged
    // joint entropy.
    std::array<std::array<double, 4>, 4> ctx_joint{};
    std::array<double, 4> ctx_weight{};

    double qber = 0.0;
    std::array<double, 2> eve_marginal{};
    double wrong0 = 0.0, wrong_total = 0.0, right0 = 0.0, right_total = 0.0;

    for (Basis alice_basis : kBases) {
        for (int a = 0; a < 2; ++a) {
            const double p_alice = 0.25;
            const Bb84Symbol sent = symbol_for(alice_basis, a);
            const Qubit state = bb84_state(sent);
            const int state_row = static_cast<int>(sent);

            if (!eve.measures) {
                bit_joint[a * bit_cols + basis_index(alice_basis)] += p_alice;
                state_joint[state_row * state_cols] += p_alice;
                for (int b = 0; b < 2; ++b) {
                    const double pb = measure_prob(state, basis_projector(alice_basis, b));
                    if (b != a) qber += p_alice * pb;
                }
                continue;
            }

            for (Basis eve_basis : kBases) {
                const double p_eve_basis = eve_basis == Basis::Z ? eve.p_z : 1.0 - eve.p_z;
                const int ctx = 2 * basis_index(eve_basis) + basis_index(alice_basis);
                ctx_weight[ctx] += p_alice * p_eve_basis;
                if (a == 0) (eve_basis == alice_basis ? right_total : wrong_total) += p_alice * p_eve_basis;
                for (int e = 0; e < 2; ++e) {
                    const double pe = measure_prob(state, basis_projector(eve_basis, e));
                    const double w = p_alice * p_eve_basis * pe;
                    bit_joint[a * bit_cols + 4 * basis_index(eve_basis) + 2 * basis_index(alice_basis) + e] += w;
                    state_joint[state_row * state_cols + 2 * basis_index(eve_basis) + e] += w;
                    ctx_joint[ctx][2 * a + e] += w;
                    eve_marginal[e] += w;

                    if (a == 0 && e == 0) (eve_basis == alice_basis ? right0 : wrong0) += w;

                    // Eve resends her outcome; Bob measures in Alice's basis.
                    const Qubit resent = bb84_state(symbol_for(eve_basis, e));
                    for (int b = 0; b < 2; ++b) {
                        const double pb = measure_prob(resent, basis_projector(alice_basis, b));
                        if (b != a) qber += w * pb;
                    }
                }
            }
        }
    }

    JointTable bit_table{2, bit_cols, std::move(bit_joint)};
    JointTable state_table{4, state_cols, std::move(state_joint)};

    double ctx_entropy = 0.0;
    for (std::size_t c = 0; c < ctx_joint.size(); ++c) {
        if (ctx_weight[c] <= 0.0) continue;
        double h = 0.0;
        for (double p : ctx_joint[c]) h += plogp(p / ctx_weight[c]);
        ctx_entropy += ctx_weight[c] * h;
    }
    if (!eve.measures) {
        ctx_entropy = 1.0;  // H(A) with a constant E
        eve_marginal = {1.0, 0.0};
    }

    IrEnumeration r{.outcome = {mutual_information(bit_table), qber},
                    .bit_table = std::move(bit_table),
                    .state_table = std::move(state_table),
                    .eve_marginal = eve_marginal,
                    .p_eve0_given_wrong_basis = wrong_total > 0.0 ? wrong0 / wrong_total : 0.0,
                    .p_eve0_given_right_basis = right_total > 0.0 ? right0 / right_total : 0.0,
                    .context_joint_entropy = ctx_entropy};
    return r;
}

SingleAttackOutcome ir_attack_exact() { return enumerate_ir_attack().outcome; }

MiPair state_vs_bit_mi_equivalence(const EveStrategy& eve) {
    const IrEnumeration r = enumerate_ir_attack(eve);
    return {mutual_information(r.bit_table), mutual_information(r.state_table)};
}

}  // namespace qpair
