#include "qpair/info.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qpair/quantum.hpp"

namespace qpair {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= -kTolerance && p <= 1.0 + kTolerance)) throw std::invalid_argument(what);
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("Distribution: empty");
    for (double p : probs_) check_probability(p, "Distribution: entry outside [0,1]");
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > kTolerance) throw std::invalid_argument("Distribution: does not sum to 1");
}

Distribution Distribution::uniform(std::size_t n) {
    return Distribution{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

JointTable::JointTable(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), p_(std::move(row_major)) {
    if (rows_ == 0 || cols_ == 0 || p_.size() != rows_ * cols_)
        throw std::invalid_argument("JointTable: shape mismatch");
    for (double p : p_) check_probability(p, "JointTable: entry outside [0,1]");
    const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
    if (std::abs(total - 1.0) > kTolerance) throw std::invalid_argument("JointTable: does not sum to 1");
}

Distribution JointTable::row_marginal() const {
    std::vector<double> m(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m[r] += (*this)(r, c);
    return Distribution{std::move(m)};
}

Distribution JointTable::col_marginal() const {
    std::vector<double> m(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m[c] += (*this)(r, c);
    return Distribution{std::move(m)};
}

JointTable JointTable::transpose() const {
    std::vector<double> t(p_.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t[c * rows_ + r] = (*this)(r, c);
    return JointTable{cols_, rows_, std::move(t)};
}

double plogp(double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); }

double entropy(const Distribution& d) {
    double h = 0.0;
    for (double p : d.probs()) h += plogp(p);
    return h;
}

double joint_entropy(const JointTable& j) {
    double h = 0.0;
    for (double p : j.entries()) h += plogp(p);
    return h;
}

double binary_entropy(double p) {
    check_probability(p, "binary_entropy: p outside [0,1]");
    return plogp(p) + plogp(1.0 - p);
}

double mutual_information(const JointTable& j) {
    return entropy(j.row_marginal()) + entropy(j.col_marginal()) - joint_entropy(j);
}

double ir_bound(double q) {
    if (!(q >= 0.0 && q <= 0.5)) throw std::domain_error("ir_bound: q outside [0, 1/2]");
    return q <= 0.25 ? 2.0 * q : 0.5;
}

double incoherent_bound(double q) {
    if (!(q >= 0.0 && q <= 0.5)) throw std::domain_error("incoherent_bound: q outside [0, 1/2]");
    const double r = std::sqrt(q * (1.0 - q));
    // (1/2 + r) log(1 + 2r) + (1/2 - r) log(1 - 2r); the second factor is
    // 0 log 0 at q = 1/2.
    const double upper = (0.5 + r) * std::log2(1.0 + 2.0 * r);
    const double lower_weight = 0.5 - r;
    const double lower = lower_weight <= 0.0 ? 0.0 : lower_weight * std::log2(1.0 - 2.0 * r);
    return upper + lower;
}

IncoherentPoint incoherent_curve(double eta) {
    if (!(eta >= 0.0 && eta <= std::numbers::pi / 2 + kTolerance))
        throw std::domain_error("incoherent_curve: eta outside [0, pi/2]");
    const double q = 0.5 * (1.0 - std::cos(eta));
    const double eve_correct = std::min(1.0, 0.5 * (1.0 + std::sin(eta)));
    return {q, 1.0 - binary_entropy(eve_correct)};
}

double six_state_bound(double q) {
    if (!(q >= 0.0 && q < 0.5)) throw std::domain_error("six_state_bound: q outside [0, 1/2)");
    const double g = 0.5 * (1.0 + std::sqrt(q * (2.0 - 3.0 * q)) / (1.0 - q));
    return 1.0 - (1.0 - q) * binary_entropy(std::min(g, 1.0));
}

double shannon_reconciliation_bound(double n, double p) {
    if (n < 0) throw std::invalid_argument("shannon_reconciliation_bound: negative length");
    return n * binary_entropy(p);
}

double werner_fidelity(int n, int m, int d) {
    if (n < 1 || m < n) throw std::invalid_argument("werner_fidelity: need 1 <= N <= M");
    if (d < 2) throw std::invalid_argument("werner_fidelity: need d >= 2");
    // Single rounding: N/M + (M-N)(N+1)/(M(N+d)) over a common denominator.
    const long long N = n, M = m, D = d;
    return static_cast<double>(N * (N + D) + (M - N) * (N + 1)) / static_cast<double>(M * (N + D));
}

CloneFidelityPair asymmetric_fidelities(double a, double b, int d) {
    if (d < 2) throw std::invalid_argument("asymmetric_fidelities: need d >= 2");
    const double constraint = a * a + b * b + 2.0 * a * b / d;
    if (std::abs(constraint - 1.0) > kTolerance)
        throw std::invalid_argument("asymmetric_fidelities: a^2 + b^2 + 2ab/d != 1");
    const double w = (d - 1.0) / d;
    return {1.0 - w * b * b, 1.0 - w * a * a};
}

}  // namespace qpair
