#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qpair/gates.hpp"

using namespace qpair;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kH = std::numbers::sqrt2 / 2;
constexpr cplx kI{0.0, 1.0};
}  // namespace

TEST_CASE("BB84 alphabet") {
    CHECK(bit_value(Bb84Symbol::Zero) == 0);
    CHECK(bit_value(Bb84Symbol::Plus) == 0);
    CHECK(bit_value(Bb84Symbol::One) == 1);
    CHECK(bit_value(Bb84Symbol::Minus) == 1);
    CHECK(basis_of(Bb84Symbol::One) == Basis::Z);
    CHECK(basis_of(Bb84Symbol::Minus) == Basis::X);

    CHECK(std::abs(bb84_state(Bb84Symbol::Zero)[0] - 1.0) < 1e-15);
    const Qubit plus = bb84_state(Bb84Symbol::Plus);
    const Qubit minus = bb84_state(Bb84Symbol::Minus);
    CHECK(std::abs(plus[0] - kH) < 1e-15);
    CHECK(std::abs(plus[1] - kH) < 1e-15);
    CHECK(std::abs(minus[1] + kH) < 1e-15);
}

TEST_CASE("pair states follow the listed order") {
    CHECK(std::abs(inner(pair_state(PairIndex{0}), Pair::basis(0)) - 1.0) < 1e-12);
    const Pair nine = kron(bb84_state(Bb84Symbol::Plus), bb84_state(Bb84Symbol::One));
    CHECK(std::abs(inner(pair_state(PairIndex{9}), nine) - 1.0) < 1e-12);
    const Pair last = kron(bb84_state(Bb84Symbol::Minus), bb84_state(Bb84Symbol::Minus));
    CHECK(std::abs(inner(pair_state(PairIndex{15}), last) - 1.0) < 1e-12);
    CHECK_THROWS_AS(PairIndex{16}, std::out_of_range);
    CHECK_THROWS_AS(PairIndex{-1}, std::out_of_range);

    for (int a = 0; a < 16; ++a) {
        CHECK(std::abs(pair_state(PairIndex{a}).norm() - 1.0) < 1e-12);
        for (int b = a + 1; b < 16; ++b) CHECK(std::abs(inner(pair_state(PairIndex{a}), pair_state(PairIndex{b}))) < 1.0 - 1e-6);
    }
}

TEST_CASE("su2 gate examples") {
    CHECK(max_abs_diff(su2_gate({0, 0, 0}), Mat2::identity()) < 1e-15);
    const Mat2 d = su2_gate({kPi / 2, 0, 0});
    CHECK(std::abs(d(0, 0) - kI) < 1e-15);
    CHECK(std::abs(d(1, 1) + kI) < 1e-15);
    const double a3 = 0.37;
    const Mat2 off = su2_gate({0, kPi / 2, a3});
    CHECK(std::abs(off(0, 1) - std::exp(kI * a3)) < 1e-15);
    CHECK(std::abs(off(1, 0) + std::exp(-kI * a3)) < 1e-15);
    CHECK(std::abs(off(0, 0)) < 1e-15);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const Mat2 k = su2_gate({u(rng), u(rng), u(rng)});
        CHECK(is_unitary(k, 1e-12));
        CHECK(std::abs(k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0) - 1.0) < 1e-12);
    }
}

TEST_CASE("canonical gate examples") {
    CHECK(max_abs_diff(canonical_gate({0, 0, 0}), Mat4::identity()) < 1e-15);
    const Pair s = apply(canonical_gate({0, kPi / 2, 0}), Pair::basis(0));
    CHECK(std::abs(s[0] - kH) < 1e-12);
    CHECK(std::abs(s[3] + kI * kH) < 1e-12);
    CHECK_THROWS_AS(canonical_gate({-0.1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(canonical_gate({0, 0, 3.2}), std::invalid_argument);
}

TEST_CASE("canonical gate agrees with the spectral oracle on a 5x5x5 grid") {
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                const CanonicalParams p{i * kPi / 4, j * kPi / 4, k * kPi / 4};
                const Mat4 a = canonical_gate(p);
                const oracle::M4 ref = oracle::canonical_by_spectrum(p.c1, p.c2, p.c3);
                double diff = 0.0;
                for (std::size_t r = 0; r < 4; ++r)
                    for (std::size_t c = 0; c < 4; ++c)
                        diff = std::max(diff, std::abs(a(r, c) - ref(static_cast<int>(r), static_cast<int>(c))));
                CHECK(diff < 1e-9);
            }
}

TEST_CASE("canonical gate: unitary, swap symmetric, unit determinant") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
        const Mat4 a = canonical_gate(oracle::random_params(rng));
        CHECK(is_unitary(a, 1e-12));
        CHECK(max_abs_diff(swap_gate() * a * swap_gate(), a) < 1e-12);
        CHECK(std::abs(determinant(a) - 1.0) < 1e-9);
    }
}
