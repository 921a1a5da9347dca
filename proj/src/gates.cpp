#include "qpair/gates.hpp"

#include <numbers>
#include <string>

namespace qpair {

namespace {

constexpr cplx kI{0.0, 1.0};

constexpr std::array<Bb84Symbol, 4> kSymbolOrder{Bb84Symbol::Zero, Bb84Symbol::One,
                                                 Bb84Symbol::Plus, Bb84Symbol::Minus};

// Pair index a -> (first, second) symbol positions in kSymbolOrder. The
// listing groups by the bases of (first, second): ZZ, ZX, XZ, XX.
constexpr std::pair<int, int> decode(int a) {
    const int block = a / 4;  // 0:ZZ 1:ZX 2:XZ 3:XX
    const int within = a % 4;
    const int first_bit = within / 2;
    const int second_bit = within % 2;
    const int first_offset = (block >= 2) ? 2 : 0;
    const int second_offset = (block % 2 == 1) ? 2 : 0;
    return {first_offset + first_bit, second_offset + second_bit};
}

}  // namespace

std::string_view to_string(Basis b) { return b == Basis::Z ? "Z" : "X"; }

std::string_view to_string(Bb84Symbol s) {
    switch (s) {
        case Bb84Symbol::Zero: return "0";
        case Bb84Symbol::One: return "1";
        case Bb84Symbol::Plus: return "+";
        case Bb84Symbol::Minus: return "-";
    }
    return "?";
}

Qubit bb84_state(Bb84Symbol s) {
    const double h = std::numbers::sqrt2 / 2;
    switch (s) {
        case Bb84Symbol::Zero: return Qubit{{1.0, 0.0}};
        case Bb84Symbol::One: return Qubit{{0.0, 1.0}};
        case Bb84Symbol::Plus: return Qubit{{h, h}};
        case Bb84Symbol::Minus: return Qubit{{h, -h}};
    }
    throw std::invalid_argument("bb84_state: unknown symbol");
}

const Projector<2>& basis_projector(Basis basis, int bit) {
    static const std::array<Projector<2>, 4> table{
        Projector<2>::onto(bb84_state(Bb84Symbol::Zero)),
        Projector<2>::onto(bb84_state(Bb84Symbol::One)),
        Projector<2>::onto(bb84_state(Bb84Symbol::Plus)),
        Projector<2>::onto(bb84_state(Bb84Symbol::Minus)),
    };
    if (bit != 0 && bit != 1) throw std::invalid_argument("basis_projector: bit must be 0 or 1");
    return table[(basis == Basis::Z ? 0 : 2) + bit];
}

const Projector<4>& pair_projector(Subsystem qubit, Basis basis, int bit) {
    static const std::array<Projector<4>, 8> table = [] {
        const Mat2 id = Mat2::identity();
        auto make = [&](Subsystem q, Basis b, int v) {
            const Mat2& p = basis_projector(b, v).matrix();
            return Projector<4>{q == Subsystem::First ? kron(p, id) : kron(id, p)};
        };
        return std::array<Projector<4>, 8>{
            make(Subsystem::First, Basis::Z, 0),  make(Subsystem::First, Basis::Z, 1),
            make(Subsystem::First, Basis::X, 0),  make(Subsystem::First, Basis::X, 1),
            make(Subsystem::Second, Basis::Z, 0), make(Subsystem::Second, Basis::Z, 1),
            make(Subsystem::Second, Basis::X, 0), make(Subsystem::Second, Basis::X, 1),
        };
    }();
    if (bit != 0 && bit != 1) throw std::invalid_argument("pair_projector: bit must be 0 or 1");
    return table[(qubit == Subsystem::First ? 0 : 4) + (basis == Basis::Z ? 0 : 2) + bit];
}

PairIndex::PairIndex(int value) : value_(value) {
    if (value < 0 || value >= kCount) throw std::out_of_range("PairIndex: value outside [0,15]");
}

Bb84Symbol PairIndex::first() const { return kSymbolOrder[decode(value_).first]; }
Bb84Symbol PairIndex::second() const { return kSymbolOrder[decode(value_).second]; }

Pair pair_state(PairIndex a) { return kron(bb84_state(a.first()), bb84_state(a.second())); }

Mat2 su2_gate(const SU2Params& p) {
    const double c = std::cos(p.a2);
    const double s = std::sin(p.a2);
    return Mat2{{std::exp(kI * p.a1) * c, std::exp(kI * p.a3) * s,
                 -std::exp(-kI * p.a3) * s, std::exp(-kI * p.a1) * c}};
}

void CanonicalParams::validate() const {
    for (double c : {c1, c2, c3})
        if (!(c >= 0.0 && c <= std::numbers::pi))
            throw std::invalid_argument("CanonicalParams: parameter outside [0, pi]");
}

Mat4 canonical_gate(const CanonicalParams& p) {
    p.validate();
    const cplx plus = std::exp(kI * (p.c3 / 2));
    const cplx minus = std::exp(-kI * (p.c3 / 2));
    const double cd = std::cos((p.c1 - p.c2) / 2);
    const double sd = std::sin((p.c1 - p.c2) / 2);
    const double cs = std::cos((p.c1 + p.c2) / 2);
    const double ss = std::sin((p.c1 + p.c2) / 2);

    Mat4 a;
    a(0, 0) = plus * cd;
    a(0, 3) = kI * plus * sd;
    a(1, 1) = minus * cs;
    a(1, 2) = kI * minus * ss;
    a(2, 1) = kI * minus * ss;
    a(2, 2) = minus * cs;
    a(3, 0) = kI * plus * sd;
    a(3, 3) = plus * cd;
    return a;
}

cplx determinant(const Mat4& m) {
    auto det3 = [&](int skip_col) {
        std::array<int, 3> cols{};
        for (int c = 0, k = 0; c < 4; ++c)
            if (c != skip_col) cols[k++] = c;
        const auto e = [&](int r, int k) { return m(r, cols[k]); };
        return e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1)) -
               e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0)) +
               e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0));
    };
    cplx det{};
    for (int c = 0; c < 4; ++c) {
        const double sign = (c % 2 == 0) ? 1.0 : -1.0;
        det += sign * m(0, c) * det3(c);
    }
    return det;
}

}  // namespace qpair
