#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qpair/bb84.hpp"

using namespace qpair;

TEST_CASE("intercept-resend exact point") {
    const auto o = ir_attack_exact();
    CHECK(std::abs(o.info_bits - 0.5) < 1e-12);
    CHECK(std::abs(o.qber - 0.25) < 1e-12);
}

TEST_CASE("interception fraction scales linearly") {
    const auto o = ir_attack_exact();
    const auto half = scale_by_fraction(o, Fraction{0.5});
    CHECK(half.info_bits == doctest::Approx(0.25));
    CHECK(half.qber == doctest::Approx(0.125));
    const auto none = scale_by_fraction(o, Fraction{0.0});
    CHECK(none.info_bits == 0.0);
    CHECK(none.qber == 0.0);
    for (int k = 0; k <= 20; ++k) {
        const double xi = k / 20.0;
        const auto s = scale_by_fraction(o, Fraction{xi});
        CHECK(std::abs(s.info_bits - 0.5 * xi) < 1e-12);
        CHECK(std::abs(s.qber - 0.25 * xi) < 1e-12);
    }
    CHECK_THROWS_AS(Fraction{1.1}, std::invalid_argument);
    CHECK_THROWS_AS(Fraction{-0.01}, std::invalid_argument);
}

TEST_CASE("Eve's conditional outcome statistics") {
    const auto e = enumerate_ir_attack();
    CHECK(e.p_eve0_given_wrong_basis == doctest::Approx(0.5));
    CHECK(e.p_eve0_given_right_basis == doctest::Approx(1.0));
    CHECK(e.eve_marginal[0] == doctest::Approx(0.5));
    CHECK(e.eve_marginal[1] == doctest::Approx(0.5));
    // Context-averaged H(A,E): 1 bit when bases agree, 2 bits otherwise.
    CHECK(e.context_joint_entropy == doctest::Approx(1.5));
}

TEST_CASE("no measurement leaks nothing and induces no errors") {
    const auto e = enumerate_ir_attack(EveStrategy::none());
    CHECK(std::abs(e.outcome.info_bits) < 1e-12);
    CHECK(std::abs(e.outcome.qber) < 1e-12);
}

TEST_CASE("a fixed basis gives the same point as a random one") {
    for (Basis b : {Basis::Z, Basis::X}) {
        const auto o = enumerate_ir_attack(EveStrategy::fixed(b)).outcome;
        CHECK(o.info_bits == doctest::Approx(0.5));
        CHECK(o.qber == doctest::Approx(0.25));
    }
    for (double pz : {0.1, 0.3, 0.9}) {
        const auto o = enumerate_ir_attack(EveStrategy::biased(pz)).outcome;
        CHECK(o.info_bits == doctest::Approx(0.5));
        CHECK(o.qber == doctest::Approx(0.25));
    }
}

TEST_CASE("bit and state variables carry the same information") {
    for (double pz : {0.0, 0.25, 0.5, 1.0}) {
        const auto mi = state_vs_bit_mi_equivalence(EveStrategy::biased(pz));
        CHECK(std::abs(mi.bit_variable - mi.state_variable) < 1e-12);
    }
}
