#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "qpair/info.hpp"

using namespace qpair;

namespace {

// -p log2 p - (1-p) log2 (1-p) written out independently of the library.
double hbin(double p) {
    auto t = [](double x) { return x > 0.0 ? -x * std::log(x) / std::log(2.0) : 0.0; };
    return t(p) + t(1.0 - p);
}

}  // namespace

TEST_CASE("entropy examples") {
    CHECK(entropy(Distribution{{1.0, 0.0}}) == 0.0);
    CHECK(entropy(Distribution{{0.5, 0.5}}) == doctest::Approx(1.0));
    CHECK(entropy(Distribution::uniform(16)) == doctest::Approx(4.0));
    CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution({1.2, -0.2}), std::invalid_argument);
}

TEST_CASE("entropy is maximal at the flat distribution") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-0.01, 0.01);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> p(8, 0.125);
        double shift = 0.0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            const double d = u(rng);
            p[i] += d;
            shift += d;
        }
        p.back() -= shift;
        CHECK(entropy(Distribution{p}) < 3.0);
    }
}

TEST_CASE("binary entropy examples") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
    CHECK(binary_entropy(0.2) == doctest::Approx(binary_entropy(0.8)));
}

TEST_CASE("mutual information examples") {
    CHECK(std::abs(mutual_information(JointTable{2, 2, {0.25, 0.25, 0.25, 0.25}})) < 1e-12);
    CHECK(mutual_information(JointTable{2, 2, {0.5, 0.0, 0.0, 0.5}}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(JointTable(2, 2, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("mutual information is symmetric and non-negative") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> p(12);
        double total = 0.0;
        for (auto& x : p) total += (x = u(rng));
        for (auto& x : p) x /= total;
        const JointTable j{3, 4, p};
        const double i = mutual_information(j);
        CHECK(i >= -1e-9);
        CHECK(std::abs(i - mutual_information(j.transpose())) < 1e-12);
    }
}

TEST_CASE("intercept-resend bound") {
    CHECK(ir_bound(0.0) == 0.0);
    CHECK(ir_bound(0.25) == doctest::Approx(0.5));
    CHECK(ir_bound(0.4) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ir_bound(0.6), std::domain_error);
}

TEST_CASE("incoherent bound and curve") {
    CHECK(incoherent_bound(0.0) == 0.0);
    CHECK(incoherent_bound(0.5) == doctest::Approx(1.0));

    const auto c0 = incoherent_curve(0.0);
    CHECK(c0.qber == 0.0);
    CHECK(std::abs(c0.info) < 1e-12);
    const auto c90 = incoherent_curve(std::numbers::pi / 2);
    CHECK(c90.qber == doctest::Approx(0.5));
    CHECK(c90.info == doctest::Approx(1.0));
    const auto c45 = incoherent_curve(std::numbers::pi / 4);
    CHECK(c45.qber == doctest::Approx((1.0 - std::numbers::sqrt2 / 2) / 2));
    CHECK(c45.info == doctest::Approx(1.0 - hbin((1.0 + std::numbers::sqrt2 / 2) / 2)));

    // eta with q(eta) = 1/4 is acos(1/2) = pi/3.
    CHECK(std::abs(incoherent_bound(0.25) - incoherent_curve(std::numbers::pi / 3).info) < 1e-9);
}

TEST_CASE("incoherent bound is concave") {
    const int n = 100;
    std::vector<double> v(n + 1);
    for (int k = 0; k <= n; ++k) v[static_cast<std::size_t>(k)] = incoherent_bound(0.5 * k / n);
    for (std::size_t k = 1; k < v.size() - 1; ++k) CHECK(v[k - 1] - 2.0 * v[k] + v[k + 1] <= 1e-9);
}

TEST_CASE("bound ordering on (0, 1/2)") {
    for (int k = 1; k < 100; ++k) {
        const double q = 0.5 * k / 100;
        CHECK(ir_bound(q) <= incoherent_bound(q) + 1e-12);
        CHECK(six_state_bound(q) <= incoherent_bound(q) + 1e-12);
    }
    CHECK(six_state_bound(0.1) < incoherent_bound(0.1));
}

TEST_CASE("six-state bound") {
    CHECK(std::abs(six_state_bound(0.0)) < 1e-12);
    const double q = 1.0 / 3.0;
    const double g = 0.5 * (1.0 + std::sqrt(q * (2.0 - 3.0 * q)) / (1.0 - q));
    CHECK(six_state_bound(q) == doctest::Approx(1.0 - (1.0 - q) * hbin(g)).epsilon(1e-12));
    CHECK_THROWS_AS(six_state_bound(0.5), std::domain_error);
}

TEST_CASE("Shannon reconciliation bound") {
    CHECK(shannon_reconciliation_bound(1000, 0.0) == 0.0);
    CHECK(shannon_reconciliation_bound(1000, 0.5) == doctest::Approx(1000.0));
    CHECK(shannon_reconciliation_bound(1000, 0.05) == doctest::Approx(1000 * hbin(0.05)));
    CHECK(shannon_reconciliation_bound(1000, 0.05) == doctest::Approx(286.397).epsilon(1e-5));
}

TEST_CASE("cloning fidelities") {
    CHECK(werner_fidelity(3, 3, 2) == doctest::Approx(1.0));
    CHECK(werner_fidelity(1, 2, 2) == 5.0 / 6.0);
    CHECK(werner_fidelity(1, 2, 3) == doctest::Approx(0.75));
    CHECK_THROWS_AS(werner_fidelity(3, 2, 2), std::invalid_argument);

    const auto edge = asymmetric_fidelities(0.0, 1.0, 2);
    CHECK(edge.a == doctest::Approx(0.5));
    CHECK(edge.b == doctest::Approx(1.0));
    const double s = 1.0 / std::sqrt(3.0);
    const auto sym = asymmetric_fidelities(s, s, 2);
    CHECK(sym.a == doctest::Approx(5.0 / 6.0));
    CHECK(sym.b == doctest::Approx(werner_fidelity(1, 2, 2)));
    const auto qutrit = asymmetric_fidelities(1.0, 0.0, 3);
    CHECK(qutrit.a == doctest::Approx(1.0));
    CHECK(qutrit.b == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(asymmetric_fidelities(0.5, 0.5, 2), std::invalid_argument);
}
