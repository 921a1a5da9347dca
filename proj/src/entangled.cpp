#include "qpair/entangled.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include "qpair/info.hpp"
#include "qpair/parallel.hpp"

namespace qpair {

namespace {

constexpr double kSlopeTieRelative = 1e-12;

struct Branch {
    double prob;  // p(e|a) accumulated so far
    Pair state;   // zero sentinel when prob is 0
};

void audit(double total, const char* stage) {
    if (std::abs(total - 1.0) > kTolerance)
        throw InvariantViolation(std::string("normalization audit failed: ") + stage);
}

// Splits every branch by a two-outcome measurement of one qubit. Branch
// order is parent-major, so outcome index = 2 * parent + bit.
std::vector<Branch> split(const std::vector<Branch>& parents, Subsystem qubit, Basis basis, const char* stage) {
    std::vector<Branch> out;
    out.reserve(parents.size() * 2);
    for (const Branch& parent : parents) {
        double total = 0.0;
        for (int bit = 0; bit < 2; ++bit) {
            const Projector<4>& proj = pair_projector(qubit, basis, bit);
            const double p = measure_prob(parent.state, proj);
            total += p;
            out.push_back({parent.prob * p, post_measure(parent.state, proj)});
        }
        if (!parent.state.is_zero()) audit(total, stage);
    }
    return out;
}

// Bob's basis for each qubit of pair a is the basis Alice prepared it in.
Basis bob_basis(PairIndex a, Subsystem qubit) {
    return basis_of(qubit == Subsystem::First ? a.first() : a.second());
}

struct Enumeration {
    std::vector<double> cond;  // p(e|a), 16 x outcomes
    int outcomes = 1;
    double qber1 = 0.0;
    double qber2 = 0.0;
};

Enumeration enumerate(const CanonicalParams& params, const detail::MeasurementPlan& plan) {
    const Mat4 gate = canonical_gate(params);
    const Mat4 undo = gate.adjoint();
    const int outcomes = (plan.first ? 2 : 1) * (plan.second ? 2 : 1);

    Enumeration en;
    en.outcomes = outcomes;
    en.cond.assign(static_cast<std::size_t>(PairIndex::kCount * outcomes), 0.0);
    const double p_a = 1.0 / PairIndex::kCount;

    for (int index = 0; index < PairIndex::kCount; ++index) {
        const PairIndex a{index};

        // Phase 1: Alice applies the gate.
        std::vector<Branch> branches{{1.0, apply(gate, pair_state(a))}};

        // Phases 2 and 3: Eve's measurements.
        if (plan.first) branches = split(branches, Subsystem::First, *plan.first, "eve first qubit");
        if (plan.second) branches = split(branches, Subsystem::Second, *plan.second, "eve second qubit");

        double eve_total = 0.0;
        for (int e = 0; e < outcomes; ++e) {
            en.cond[static_cast<std::size_t>(index * outcomes + e)] = branches[static_cast<std::size_t>(e)].prob;
            eve_total += branches[static_cast<std::size_t>(e)].prob;
        }
        audit(eve_total, "p(e|a)");

        // Phases 4 and 5: Bob inverts the gate and measures both qubits.
        const Basis d1 = bob_basis(a, Subsystem::First);
        const Basis d2 = bob_basis(a, Subsystem::Second);
        std::array<double, 2> p_b1{};
        std::array<double, 2> p_b2{};
        for (const Branch& branch : branches) {
            if (branch.state.is_zero()) continue;
            const Pair received = apply(undo, branch.state);
            double b1_total = 0.0;
            for (int b1 = 0; b1 < 2; ++b1) {
                const Projector<4>& proj1 = pair_projector(Subsystem::First, d1, b1);
                const double pb1 = measure_prob(received, proj1);
                b1_total += pb1;
                p_b1[static_cast<std::size_t>(b1)] += branch.prob * pb1;
                const Pair after = post_measure(received, proj1);
                if (after.is_zero()) continue;
                double b2_total = 0.0;
                for (int b2 = 0; b2 < 2; ++b2) {
                    const double pb2 = measure_prob(after, pair_projector(Subsystem::Second, d2, b2));
                    b2_total += pb2;
                    p_b2[static_cast<std::size_t>(b2)] += branch.prob * pb1 * pb2;
                }
                audit(b2_total, "p(b2|b1,e,a)");
            }
            audit(b1_total, "p(b1|e,a)");
        }
        audit(p_b1[0] + p_b1[1], "p(b1|a)");
        audit(p_b2[0] + p_b2[1], "p(b2|a)");

        // Phase 6: error rates against Alice's bits.
        const int x1 = bit_value(a.first());
        const int x2 = bit_value(a.second());
        en.qber1 += p_a * p_b1[static_cast<std::size_t>(1 - x1)];
        en.qber2 += p_a * p_b2[static_cast<std::size_t>(1 - x2)];
    }
    return en;
}

double slope_of(const AttackPoint& pt, bool& competing) {
    competing = true;
    if (pt.qber <= kZeroProbability) {
        if (pt.info_per_bit > kZeroProbability) return std::numeric_limits<double>::infinity();
        competing = false;
        return 0.0;
    }
    return pt.info_per_bit / pt.qber;
}

bool same_slope(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
    return std::abs(a - b) <= kSlopeTieRelative * std::max(std::abs(a), std::abs(b));
}

BestConfig pick_best(const std::array<AttackPoint, 6>& points) {
    std::optional<std::size_t> best;
    double best_slope = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool competing = false;
        const double s = slope_of(points[i], competing);
        if (!competing) continue;
        bool take = false;
        if (!best) {
            take = true;
        } else if (same_slope(s, best_slope)) {
            take = points[i].qber > points[*best].qber + kZeroProbability;
        } else {
            take = s > best_slope;
        }
        if (take) {
            best = i;
            best_slope = s;
        }
    }
    if (!best) return {EveConfig{NoMeasurement{}}, AttackPoint{}};
    return {measuring_configs()[*best], points[*best]};
}

char basis_letter(Basis b) { return b == Basis::Z ? 'z' : 'x'; }

}  // namespace

int EveConfig::outcome_count() const {
    if (std::holds_alternative<BothQubits>(plan)) return 4;
    if (std::holds_alternative<SecondOnly>(plan)) return 2;
    return 1;
}

std::string to_string(const EveConfig& cfg) {
    if (const auto* both = std::get_if<BothQubits>(&cfg.plan))
        return {basis_letter(both->first), basis_letter(both->second)};
    if (const auto* second = std::get_if<SecondOnly>(&cfg.plan)) return {'-', basis_letter(second->basis)};
    return "none";
}

EveConfig parse_config(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (const EveConfig& cfg : all_configs())
        if (to_string(cfg) == lower) return cfg;
    throw std::invalid_argument("unknown Eve configuration: " + std::string(name));
}

const std::array<EveConfig, 6>& measuring_configs() {
    static const std::array<EveConfig, 6> configs{
        EveConfig{BothQubits{Basis::Z, Basis::Z}}, EveConfig{BothQubits{Basis::Z, Basis::X}},
        EveConfig{BothQubits{Basis::X, Basis::Z}}, EveConfig{BothQubits{Basis::X, Basis::X}},
        EveConfig{SecondOnly{Basis::Z}},           EveConfig{SecondOnly{Basis::X}},
    };
    return configs;
}

const std::array<EveConfig, 7>& all_configs() {
    static const std::array<EveConfig, 7> configs = [] {
        std::array<EveConfig, 7> c{};
        std::copy(measuring_configs().begin(), measuring_configs().end(), c.begin());
        c[6] = EveConfig{NoMeasurement{}};
        return c;
    }();
    return configs;
}

AttackPoint scale_point(const AttackPoint& pt, Fraction xi) {
    const double x = xi.value();
    return {x * pt.info_per_bit, x * pt.qber1, x * pt.qber2, x * pt.qber};
}

ConditionalTable::ConditionalTable(int outcomes, std::vector<double> row_major)
    : outcomes_(outcomes), p_(std::move(row_major)) {
    if (outcomes != 1 && outcomes != 2 && outcomes != 4)
        throw std::invalid_argument("ConditionalTable: outcome count must be 1, 2 or 4");
    if (p_.size() != static_cast<std::size_t>(PairIndex::kCount * outcomes))
        throw std::invalid_argument("ConditionalTable: shape mismatch");
    for (int a = 0; a < PairIndex::kCount; ++a) {
        double total = 0.0;
        for (int e = 0; e < outcomes; ++e) total += (*this)(e, a);
        if (std::abs(total - 1.0) > kTolerance) throw std::invalid_argument("ConditionalTable: row does not sum to 1");
    }
}

namespace detail {

MeasurementPlan plan_of(const EveConfig& cfg) {
    if (const auto* both = std::get_if<BothQubits>(&cfg.plan)) return {both->first, both->second};
    if (const auto* second = std::get_if<SecondOnly>(&cfg.plan)) return {std::nullopt, second->basis};
    return {};
}

AttackPoint run_plan(const CanonicalParams& p, const MeasurementPlan& plan) {
    const Enumeration en = enumerate(p, plan);

    // info = (H(A) + H(E) - H(A,E)) / 2 with uniform a.
    const double p_a = 1.0 / PairIndex::kCount;
    std::vector<double> p_e(static_cast<std::size_t>(en.outcomes), 0.0);
    double h_ae = 0.0;
    for (int a = 0; a < PairIndex::kCount; ++a) {
        for (int e = 0; e < en.outcomes; ++e) {
            const double joint = p_a * en.cond[static_cast<std::size_t>(a * en.outcomes + e)];
            p_e[static_cast<std::size_t>(e)] += joint;
            h_ae += plogp(joint);
        }
    }
    double h_e = 0.0;
    for (double p : p_e) h_e += plogp(p);
    const double h_a = std::log2(static_cast<double>(PairIndex::kCount));
    const double info = std::max(0.0, 0.5 * (h_a + h_e - h_ae));

    return {info, en.qber1, en.qber2, 0.5 * (en.qber1 + en.qber2)};
}

}  // namespace detail

ConditionalTable eve_conditionals(const CanonicalParams& p, const EveConfig& cfg) {
    Enumeration en = enumerate(p, detail::plan_of(cfg));
    return ConditionalTable{en.outcomes, std::move(en.cond)};
}

AttackPoint run_attack(const CanonicalParams& p, const EveConfig& cfg) {
    return detail::run_plan(p, detail::plan_of(cfg));
}

BestConfig best_config(const CanonicalParams& p) {
    std::array<AttackPoint, 6> points{};
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = run_attack(p, measuring_configs()[i]);
    return pick_best(points);
}

BestConfig best_of(const SweepRow& row) { return pick_best(row.points); }

SweepGrid::SweepGrid(int steps) : steps_(steps) {
    if (steps < 2) throw std::invalid_argument("SweepGrid: steps must be >= 2");
}

std::size_t SweepGrid::size() const {
    const auto s = static_cast<std::size_t>(steps_);
    return s * s * s;
}

double SweepGrid::value(int i) const {
    if (i < 0 || i >= steps_) throw std::out_of_range("SweepGrid: axis index out of range");
    if (i == steps_ - 1) return std::numbers::pi;
    return i * std::numbers::pi / (steps_ - 1);
}

CanonicalParams SweepGrid::at(std::size_t index) const {
    if (index >= size()) throw std::out_of_range("SweepGrid: point index out of range");
    const auto s = static_cast<std::size_t>(steps_);
    const auto i3 = static_cast<int>(index % s);
    const auto i2 = static_cast<int>((index / s) % s);
    const auto i1 = static_cast<int>(index / (s * s));
    return {value(i1), value(i2), value(i3)};
}

std::vector<SweepRow> sweep(const SweepGrid& grid, unsigned threads) {
    return parallel_map<SweepRow>(grid.size(), threads, [&](std::size_t i) {
        SweepRow row{grid.at(i), {}};
        for (std::size_t c = 0; c < row.points.size(); ++c) row.points[c] = run_attack(row.params, measuring_configs()[c]);
        return row;
    });
}

namespace {

std::vector<AttackPoint> line_sweep(int samples, auto params_at) {
    if (samples < 2) throw std::invalid_argument("samples must be >= 2");
    std::vector<AttackPoint> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double t = (k == samples - 1) ? std::numbers::pi / 2 : k * (std::numbers::pi / 2) / (samples - 1);
        out.push_back(best_config(params_at(t)).point);
    }
    return out;
}

}  // namespace

std::vector<AttackPoint> envelope_c2(int samples) {
    return line_sweep(samples, [](double t) { return CanonicalParams{0.0, t, 0.0}; });
}

std::vector<AttackPoint> arc_c3(double c2, int samples) {
    CanonicalParams{0.0, c2, 0.0}.validate();
    return line_sweep(samples, [c2](double t) { return CanonicalParams{0.0, c2, t}; });
}

RedundancyReport c1_redundancy(const std::vector<SweepRow>& rows, const SweepGrid& grid) {
    if (rows.size() != grid.size()) throw std::invalid_argument("c1_redundancy: rows do not match grid");
    struct P {
        double q, i;
    };
    std::vector<P> cloud;
    cloud.reserve(rows.size());
    for (const SweepRow& row : rows) {
        const AttackPoint pt = best_of(row).point;
        cloud.push_back({pt.qber, pt.info_per_bit});
    }
    // Rows are c1-major, so the c1 = 0 slice is the leading block.
    const auto s = static_cast<std::size_t>(grid.steps());
    const std::span<const P> slice(cloud.data(), s * s);

    // The slice is a subset of the cloud, so only one directed distance is nonzero.
    double worst = 0.0;
    for (const P& x : cloud) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const P& y : slice) nearest = std::min(nearest, std::hypot(x.q - y.q, x.i - y.i));
        worst = std::max(worst, nearest);
    }
    return {worst, 0.02};
}

}  // namespace qpair
