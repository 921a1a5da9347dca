#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qpair/entangled.hpp"

using namespace qpair;

namespace {

constexpr double kPi = std::numbers::pi;

void check_point(const AttackPoint& a, const AttackPoint& b, double tol) {
    CHECK(std::abs(a.info_per_bit - b.info_per_bit) < tol);
    CHECK(std::abs(a.qber1 - b.qber1) < tol);
    CHECK(std::abs(a.qber2 - b.qber2) < tol);
    CHECK(std::abs(a.qber - b.qber) < tol);
}

}  // namespace

TEST_CASE("config names round-trip") {
    for (const auto& c : all_configs()) CHECK(parse_config(to_string(c)) == c);
    CHECK(parse_config("ZX") == EveConfig{BothQubits{Basis::Z, Basis::X}});
    CHECK(parse_config("-x") == EveConfig{SecondOnly{Basis::X}});
    CHECK_THROWS_AS(parse_config("zy"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(""), std::invalid_argument);
    CHECK(parse_config("zz").outcome_count() == 4);
    CHECK(parse_config("-z").outcome_count() == 2);
    CHECK(parse_config("none").outcome_count() == 1);
}

TEST_CASE("identity gate reproduces plain BB84") {
    const auto pt = run_attack({0, 0, 0}, parse_config("zz"));
    CHECK(std::abs(pt.info_per_bit - 0.5) < 1e-12);
    CHECK(std::abs(pt.qber - 0.25) < 1e-12);
    for (const char* name : {"zx", "xz", "xx"}) {
        const auto p = run_attack({0, 0, 0}, parse_config(name));
        CHECK(std::abs(p.info_per_bit - 0.5) < 1e-12);
        CHECK(std::abs(p.qber - 0.25) < 1e-12);
    }
    const auto second = run_attack({0, 0, 0}, parse_config("-z"));
    CHECK(second.info_per_bit == doctest::Approx(0.25));
    CHECK(second.qber == doctest::Approx(0.125));
}

TEST_CASE("no eavesdropper means no errors and no information") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        const auto pt = run_attack(oracle::random_params(rng), parse_config("none"));
        CHECK(std::abs(pt.info_per_bit) < 1e-12);
        CHECK(std::abs(pt.qber) < 1e-12);
    }
}

TEST_CASE("extremal and intermediate gates") {
    const auto ext = best_config({0, kPi / 2, 0});
    CHECK(std::abs(ext.point.qber - 0.5) < 1e-9);
    CHECK(std::abs(ext.point.info_per_bit - 0.125) < 1e-9);

    const auto mid = best_config({0, kPi / 8, 0});
    CHECK(mid.point.info_per_bit == doctest::Approx(0.4125).epsilon(0.005));
    CHECK(std::abs(mid.point.qber - 0.287) < 2e-3);
}

TEST_CASE("second-qubit-only attack near the reported gate") {
    const CanonicalParams p{6 * kPi / 32, 25 * kPi / 32, 5 * kPi / 32};
    for (const char* name : {"-z", "-x"}) {
        const auto pt = run_attack(p, parse_config(name));
        CHECK(pt.qber >= 0.23);
        CHECK(pt.qber <= 0.25);
    }
}

TEST_CASE("attack agrees with the joint-distribution oracle") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const auto p = oracle::random_params(rng);
        for (const auto& cfg : all_configs()) {
            const auto plan = detail::plan_of(cfg);
            check_point(run_attack(p, cfg), oracle::attack_by_joint_distribution(p, plan.first, plan.second), 1e-9);
        }
        // A plan the public configurations do not expose.
        const detail::MeasurementPlan first_only{Basis::X, std::nullopt};
        check_point(detail::run_plan(p, first_only), oracle::attack_by_joint_distribution(p, Basis::X, std::nullopt), 1e-9);
    }
}

TEST_CASE("Eve's conditional outcome rows sum to one") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 100; ++i) {
        const auto p = oracle::random_params(rng);
        for (const auto& cfg : all_configs()) {
            const auto t = eve_conditionals(p, cfg);
            for (int a = 0; a < 16; ++a) {
                double s = 0.0;
                for (int e = 0; e < t.outcomes(); ++e) {
                    CHECK(t(e, a) >= -1e-15);
                    s += t(e, a);
                }
                CHECK(std::abs(s - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("attack statistics stay in range") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 1000; ++i) {
        const auto p = oracle::random_params(rng);
        const auto& cfgs = measuring_configs();
        const auto pt = run_attack(p, cfgs[static_cast<std::size_t>(i) % cfgs.size()]);
        CHECK(pt.info_per_bit >= -1e-12);
        CHECK(pt.info_per_bit <= 1.0 + 1e-12);
        CHECK(pt.qber >= -1e-12);
        CHECK(pt.qber <= 1.0 + 1e-12);
        CHECK(std::abs(pt.qber - 0.5 * (pt.qber1 + pt.qber2)) < 1e-15);
    }
}

TEST_CASE("interception fraction scales a point") {
    const auto pt = run_attack({0.3, 0.7, 1.1}, parse_config("xx"));
    const auto s = scale_point(pt, Fraction{0.4});
    CHECK(s.info_per_bit == doctest::Approx(0.4 * pt.info_per_bit));
    CHECK(s.qber1 == doctest::Approx(0.4 * pt.qber1));
    CHECK(s.qber == doctest::Approx(0.4 * pt.qber));
}

TEST_CASE("sweep grid layout") {
    const SweepGrid g{5};
    CHECK(g.size() == 125);
    CHECK(g.value(0) == 0.0);
    CHECK(g.value(4) == doctest::Approx(kPi));
    const auto p = g.at(1 * 25 + 2 * 5 + 3);
    CHECK(p.c1 == doctest::Approx(kPi / 4));
    CHECK(p.c2 == doctest::Approx(kPi / 2));
    CHECK(p.c3 == doctest::Approx(3 * kPi / 4));
    CHECK_THROWS(SweepGrid{1});
}

TEST_CASE("9x9x9 sweep: floor, symmetry, best config") {
    const SweepGrid grid{9};
    const auto rows = sweep(grid, 2);
    REQUIRE(rows.size() == grid.size());
    for (const auto& row : rows) {
        const auto best = best_of(row);
        CHECK(best.point.qber >= 0.25 - 1e-9);
        const auto name = to_string(best.config);
        CHECK((name == "zz" || name == "xx"));
        CHECK(std::abs(row.points[1].info_per_bit - row.points[2].info_per_bit) < 1e-9);
        CHECK(std::abs(row.points[1].qber - row.points[2].qber) < 1e-9);
        CHECK(std::abs(row.points[1].qber1 - row.points[2].qber2) < 1e-9);
    }
}

TEST_CASE("sweep is independent of the thread count") {
    const SweepGrid grid{4};
    const auto a = sweep(grid, 1);
    const auto b = sweep(grid, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < 6; ++k) {
            CHECK(a[i].points[k].info_per_bit == b[i].points[k].info_per_bit);
            CHECK(a[i].points[k].qber == b[i].points[k].qber);
        }
}

TEST_CASE("best_of matches best_config") {
    const SweepGrid grid{5};
    const auto rows = sweep(grid);
    for (const auto& row : rows) {
        const auto a = best_of(row);
        const auto b = best_config(row.params);
        CHECK(a.config == b.config);
        CHECK(a.point.qber == b.point.qber);
    }
}

TEST_CASE("envelope along c2") {
    const auto env = envelope_c2(33);
    REQUIRE(env.size() == 33);
    CHECK(env.front().qber == doctest::Approx(0.25));
    CHECK(env.front().info_per_bit == doctest::Approx(0.5));
    CHECK(env.back().qber == doctest::Approx(0.5));
    CHECK(env.back().info_per_bit == doctest::Approx(0.125));
    for (std::size_t i = 1; i < env.size(); ++i) {
        CHECK(env[i].info_per_bit <= env[i - 1].info_per_bit + 1e-12);
        CHECK(env[i].qber >= env[i - 1].qber - 1e-12);
    }
    CHECK_THROWS_AS(envelope_c2(1), std::invalid_argument);
    CHECK(arc_c3(kPi / 4, 5).size() == 5);
}
