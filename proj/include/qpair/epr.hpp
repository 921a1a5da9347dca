#pragma once

// Substituting half of an EPR pair: when Eve knows Alice used the zz basis
// with U1 = CNOT (H (x) I), she can read the pair and hand Bob a corrected
// Bell state without leaving errors.

#include <array>
#include <utility>

#include "qpair/gates.hpp"
#include "qpair/quantum.hpp"

namespace qpair {

enum class BellLabel { PhiPlus, PsiPlus, PhiMinus, PsiMinus };

std::string_view to_string(BellLabel b);
Pair bell_state(BellLabel b);
/// Label of U1 |a1 a2>.
BellLabel bell_label_for(int a1, int a2);

Mat4 u1();
/// sigma_x^a2 sigma_z^a1.
Mat2 correction_gate(int a1, int a2);

struct EprAttackRecord {
    int a1 = 0;
    int a2 = 0;
    std::pair<int, int> eve_recovered;
    std::pair<int, int> bob_recovered;
    double eve_certainty = 0.0;  // probability of Eve's observed outcome
    double bob_fidelity = 0.0;   // |<U1 a1a2 | (I (x) E) Phi+>|^2
    double qber_contrib = 0.0;   // mean per-bit error probability for Bob
};

/// Throws std::invalid_argument unless both qubits were prepared in Z.
EprAttackRecord run_epr_attack(PairIndex a);
EprAttackRecord run_epr_attack(int a1, int a2);

struct EprSummary {
    std::array<EprAttackRecord, 4> records;
    double total_qber = 0.0;
    double eve_info_bits = 0.0;  // per pair, uniform inputs
};

EprSummary epr_attack_summary();

}  // namespace qpair
