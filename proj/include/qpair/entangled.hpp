#pragma once

// Intercept-resend on the entangled-pair variant: Alice applies a canonical
// gate to a pair of BB84 qubits, Eve measures one or both qubits of the
// transmitted pair, and Bob undoes the gate before measuring.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpair/bb84.hpp"
#include "qpair/gates.hpp"

namespace qpair {

struct BothQubits {
    Basis first;
    Basis second;
    bool operator==(const BothQubits&) const = default;
};

struct SecondOnly {
    Basis basis;
    bool operator==(const SecondOnly&) const = default;
};

struct NoMeasurement {
    bool operator==(const NoMeasurement&) const = default;
};

struct EveConfig {
    std::variant<BothQubits, SecondOnly, NoMeasurement> plan;
    bool operator==(const EveConfig&) const = default;

    /// Number of Eve outcomes (m + 1): 4, 2 or 1.
    int outcome_count() const;
    bool measures() const { return !std::holds_alternative<NoMeasurement>(plan); }
};

/// "zz", "zx", "xz", "xx", "-z", "-x", "none".
std::string to_string(const EveConfig& cfg);
EveConfig parse_config(std::string_view name);

/// The six measuring configurations in enumeration order zz, zx, xz, xx, -z, -x.
const std::array<EveConfig, 6>& measuring_configs();
/// All seven configurations: the six measuring ones followed by NoMeasurement.
const std::array<EveConfig, 7>& all_configs();

struct AttackPoint {
    double info_per_bit = 0.0;
    double qber1 = 0.0;
    double qber2 = 0.0;
    double qber = 0.0;
};

AttackPoint scale_point(const AttackPoint& pt, Fraction xi);

/// p(e|a) for a in [0,15]; rows sum to 1.
class ConditionalTable {
public:
    ConditionalTable(int outcomes, std::vector<double> row_major);

    int outcomes() const { return outcomes_; }
    double operator()(int e, int a) const { return p_[static_cast<std::size_t>(a * outcomes_ + e)]; }

private:
    int outcomes_;
    std::vector<double> p_;
};

ConditionalTable eve_conditionals(const CanonicalParams& p, const EveConfig& cfg);

AttackPoint run_attack(const CanonicalParams& p, const EveConfig& cfg);

struct BestConfig {
    EveConfig config;
    AttackPoint point;
};

/// Measuring configuration with the steepest info/qber slope. Equal slopes
/// (relative 1e-12) go to the larger qber, then to enumeration order.
BestConfig best_config(const CanonicalParams& p);

class SweepGrid {
public:
    explicit SweepGrid(int steps = 33);
    int steps() const { return steps_; }
    std::size_t size() const;
    double value(int i) const;  // i * pi / (steps - 1)
    CanonicalParams at(std::size_t index) const;  // c1-major, then c2, then c3

private:
    int steps_;
};

struct SweepRow {
    CanonicalParams params;
    std::array<AttackPoint, 6> points;  // measuring_configs() order
};

std::vector<SweepRow> sweep(const SweepGrid& grid, unsigned threads = 1);

/// Best-config point chosen from a row, with the same rule as best_config.
BestConfig best_of(const SweepRow& row);

/// Best-config points along c1 = c3 = 0, c2 in [0, pi/2].
std::vector<AttackPoint> envelope_c2(int samples);

/// Best-config points along c1 = 0, fixed c2, c3 in [0, pi/2].
std::vector<AttackPoint> arc_c3(double c2, int samples);

struct RedundancyReport {
    double hausdorff = 0.0;
    double threshold = 0.02;
    bool redundant() const { return hausdorff <= threshold; }
};

/// Compares the (qber, info) best-config cloud of the c1 = 0 slice with
/// that of the whole grid. Informational only.
RedundancyReport c1_redundancy(const std::vector<SweepRow>& rows, const SweepGrid& grid);

namespace detail {

/// Which qubits Eve measures and in which basis. Allows a first-qubit-only
/// plan that the public configurations do not expose.
struct MeasurementPlan {
    std::optional<Basis> first;
    std::optional<Basis> second;
};

MeasurementPlan plan_of(const EveConfig& cfg);
AttackPoint run_plan(const CanonicalParams& p, const MeasurementPlan& plan);

}  // namespace detail

}  // namespace qpair
