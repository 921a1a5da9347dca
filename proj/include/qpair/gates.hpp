#pragma once

#include <array>
#include <string_view>
#include <utility>

#include "qpair/quantum.hpp"

namespace qpair {

enum class Basis { Z, X };

std::string_view to_string(Basis b);

/// The four BB84 transmission states.
enum class Bb84Symbol { Zero, One, Plus, Minus };

constexpr int bit_value(Bb84Symbol s) {
    return (s == Bb84Symbol::One || s == Bb84Symbol::Minus) ? 1 : 0;
}

constexpr Basis basis_of(Bb84Symbol s) {
    return (s == Bb84Symbol::Zero || s == Bb84Symbol::One) ? Basis::Z : Basis::X;
}

constexpr Bb84Symbol symbol_for(Basis b, int bit) {
    if (b == Basis::Z) return bit == 0 ? Bb84Symbol::Zero : Bb84Symbol::One;
    return bit == 0 ? Bb84Symbol::Plus : Bb84Symbol::Minus;
}

std::string_view to_string(Bb84Symbol s);

Qubit bb84_state(Bb84Symbol s);

/// Projector onto the eigenstate of `basis` carrying bit value `bit`.
const Projector<2>& basis_projector(Basis basis, int bit);

/// Projector acting on one qubit of a pair (identity on the other).
const Projector<4>& pair_projector(Subsystem qubit, Basis basis, int bit);

/// Index a in [0,15] of the sixteen BB84 pair states, ordered
/// 00,01,10,11,0+,0-,1+,1-,+0,+1,-0,-1,++,+-,-+,--.
class PairIndex {
public:
    static constexpr int kCount = 16;

    explicit PairIndex(int value);

    int value() const { return value_; }
    Bb84Symbol first() const;
    Bb84Symbol second() const;

private:
    int value_;
};

Pair pair_state(PairIndex a);

/// Parameters of k(a1,a2,a3) in SU(2).
struct SU2Params {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

Mat2 su2_gate(const SU2Params& p);

/// Parameters (c1,c2,c3) of the canonical non-local gate, each in [0, pi].
struct CanonicalParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    /// Throws std::invalid_argument when any parameter leaves [0, pi].
    void validate() const;
};

/// A(c1,c2,c3) = exp[i/2 (c1 XX + c2 YY + c3 ZZ)] in closed form.
Mat4 canonical_gate(const CanonicalParams& p);

/// Complex determinant of a 4x4 matrix (cofactor expansion).
cplx determinant(const Mat4& m);

}  // namespace qpair
