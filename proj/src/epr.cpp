#include "qpair/epr.hpp"

#include <numbers>
#include <stdexcept>
#include <vector>

#include "qpair/info.hpp"

namespace qpair {

namespace {

void check_bit(int b, const char* what) {
    if (b != 0 && b != 1) throw std::invalid_argument(what);
}

// Z-basis outcome distribution of both qubits, indexed 2 * b1 + b2.
std::array<double, 4> z_outcomes(const Pair& s) {
    std::array<double, 4> p{};
    for (int b1 = 0; b1 < 2; ++b1) {
        const Pair after = post_measure(s, pair_projector(Subsystem::First, Basis::Z, b1));
        const double p1 = measure_prob(s, pair_projector(Subsystem::First, Basis::Z, b1));
        for (int b2 = 0; b2 < 2; ++b2)
            p[static_cast<std::size_t>(2 * b1 + b2)] = p1 * measure_prob(after, pair_projector(Subsystem::Second, Basis::Z, b2));
    }
    return p;
}

std::size_t argmax(const std::array<double, 4>& p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[best]) best = i;
    return best;
}

}  // namespace

std::string_view to_string(BellLabel b) {
    switch (b) {
        case BellLabel::PhiPlus: return "Phi+";
        case BellLabel::PsiPlus: return "Psi+";
        case BellLabel::PhiMinus: return "Phi-";
        case BellLabel::PsiMinus: return "Psi-";
    }
    return "?";
}

Pair bell_state(BellLabel b) {
    const double h = std::numbers::sqrt2 / 2;
    switch (b) {
        case BellLabel::PhiPlus: return Pair{{h, 0.0, 0.0, h}};
        case BellLabel::PsiPlus: return Pair{{0.0, h, h, 0.0}};
        case BellLabel::PhiMinus: return Pair{{h, 0.0, 0.0, -h}};
        case BellLabel::PsiMinus: return Pair{{0.0, h, -h, 0.0}};
    }
    throw std::invalid_argument("bell_state: unknown label");
}

BellLabel bell_label_for(int a1, int a2) {
    check_bit(a1, "bell_label_for: a1 must be 0 or 1");
    check_bit(a2, "bell_label_for: a2 must be 0 or 1");
    static constexpr std::array<BellLabel, 4> table{BellLabel::PhiPlus, BellLabel::PsiPlus, BellLabel::PhiMinus,
                                                    BellLabel::PsiMinus};
    return table[static_cast<std::size_t>(2 * a1 + a2)];
}

Mat4 u1() { return cnot() * kron(hadamard(), Mat2::identity()); }

Mat2 correction_gate(int a1, int a2) {
    check_bit(a1, "correction_gate: a1 must be 0 or 1");
    check_bit(a2, "correction_gate: a2 must be 0 or 1");
    Mat2 e = Mat2::identity();
    if (a1 == 1) e = pauli_z() * e;
    if (a2 == 1) e = pauli_x() * e;
    return e;
}

EprAttackRecord run_epr_attack(PairIndex a) {
    if (basis_of(a.first()) != Basis::Z || basis_of(a.second()) != Basis::Z)
        throw std::invalid_argument("run_epr_attack: the attack assumes both qubits were sent in the z basis");
    const int a1 = bit_value(a.first());
    const int a2 = bit_value(a.second());
    const Mat4 u = u1();
    const Mat4 u_dag = u.adjoint();

    const Pair sent = apply(u, pair_state(a));

    // Eve undoes U1 and reads both qubits.
    const auto eve_p = z_outcomes(apply(u_dag, sent));
    const std::size_t eve_outcome = argmax(eve_p);
    if (eve_p[eve_outcome] < 1.0 - kZeroProbability)
        throw InvariantViolation("run_epr_attack: Eve's measurement is not deterministic");
    const int e1 = static_cast<int>(eve_outcome / 2);
    const int e2 = static_cast<int>(eve_outcome % 2);

    // She forwards an EPR pair with her correction on the second half.
    const Pair forwarded = apply(kron(Mat2::identity(), correction_gate(e1, e2)), bell_state(BellLabel::PhiPlus));
    const double fidelity = std::norm(inner(sent, forwarded));

    const auto bob_p = z_outcomes(apply(u_dag, forwarded));
    const std::size_t bob_outcome = argmax(bob_p);
    double err1 = 0.0, err2 = 0.0;
    for (std::size_t k = 0; k < bob_p.size(); ++k) {
        if (static_cast<int>(k / 2) != a1) err1 += bob_p[k];
        if (static_cast<int>(k % 2) != a2) err2 += bob_p[k];
    }

    return {a1,
            a2,
            {e1, e2},
            {static_cast<int>(bob_outcome / 2), static_cast<int>(bob_outcome % 2)},
            eve_p[eve_outcome],
            fidelity,
            0.5 * (err1 + err2)};
}

EprAttackRecord run_epr_attack(int a1, int a2) {
    check_bit(a1, "run_epr_attack: a1 must be 0 or 1");
    check_bit(a2, "run_epr_attack: a2 must be 0 or 1");
    return run_epr_attack(PairIndex{2 * a1 + a2});  // ZZ block occupies indices 0..3
}

EprSummary epr_attack_summary() {
    EprSummary s;
    std::vector<double> joint(16, 0.0);  // (a1a2, Eve's outcome)
    for (int k = 0; k < 4; ++k) {
        const EprAttackRecord r = run_epr_attack(k / 2, k % 2);
        s.records[static_cast<std::size_t>(k)] = r;
        s.total_qber += 0.25 * r.qber_contrib;
        const int e = 2 * r.eve_recovered.first + r.eve_recovered.second;
        joint[static_cast<std::size_t>(4 * k + e)] += 0.25;
    }
    s.eve_info_bits = mutual_information(JointTable{4, 4, std::move(joint)});
    return s;
}

}  // namespace qpair
