#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "qpair/bb84.hpp"
#include "qpair/entangled.hpp"
#include "qpair/epr.hpp"
#include "qpair/info.hpp"
#include "qpair/product_approx.hpp"
#include "qpair/reconciliation.hpp"

namespace qpair::cli {

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // drops the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string fixed6(double x) {
    if (std::abs(x) < 5e-7) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

struct Globals {
    std::uint64_t seed = 42;
    int steps = 33;
    double xi = 1.0;
    std::string out;
    unsigned threads = std::max(1U, std::thread::hardware_concurrency());
};

// Buffers one CSV document: '#' metadata lines, a header, then rows.
class Csv {
public:
    void meta(const std::string& key, const std::string& value) { meta_ << "# " << key << '=' << value << '\n'; }
    void note(const std::string& line) { meta_ << "# " << line << '\n'; }
    void header(std::initializer_list<std::string_view> cols) { body_ << join(cols) << '\n'; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
        body_ << '\n';
    }
    std::string str() const { return meta_.str() + body_.str(); }

private:
    static std::string join(std::initializer_list<std::string_view> cols) {
        std::string s;
        for (auto c : cols) {
            if (!s.empty()) s += ',';
            s += c;
        }
        return s;
    }
    std::ostringstream meta_;
    std::ostringstream body_;
};

void emit(const Csv& csv, const Globals& g, std::ostream& out) {
    if (g.out.empty()) {
        out << csv.str();
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + g.out);
    file << csv.str();
    if (!file.flush()) throw std::runtime_error("failed writing output file: " + g.out);
}

void common_meta(Csv& csv, const std::string& command, const Globals& g) {
    csv.meta("command", command);
    csv.meta("seed", std::to_string(g.seed));
}

std::string d(double x) { return format_double(x); }

void bounds_table(Csv& csv, int steps) {
    csv.header({"q", "ir", "incoherent", "six_state"});
    for (int k = 0; k < steps; ++k) {
        const double q = (k == steps - 1) ? 0.5 : 0.5 * k / (steps - 1);
        const std::string six = q < 0.5 ? d(six_state_bound(q)) : "";
        csv.row({d(q), d(ir_bound(q)), d(incoherent_bound(q)), six});
    }
}

void cmd_bb84(const Globals& g, bool bounds, std::ostream& out) {
    const SingleAttackOutcome full = ir_attack_exact();
    const SingleAttackOutcome scaled = scale_by_fraction(full, Fraction{g.xi});
    Csv csv;
    common_meta(csv, "bb84", g);
    csv.meta("xi", d(g.xi));
    csv.note("info_per_bit=" + fixed6(scaled.info_bits) + " qber=" + fixed6(scaled.qber));
    if (bounds) {
        csv.meta("steps", std::to_string(g.steps));
        bounds_table(csv, g.steps);
    } else {
        csv.header({"xi", "info_bits", "qber"});
        for (int k = 0; k < g.steps; ++k) {
            const double xi = (k == g.steps - 1) ? 1.0 : static_cast<double>(k) / (g.steps - 1);
            const SingleAttackOutcome p = scale_by_fraction(full, Fraction{xi});
            csv.row({d(xi), d(p.info_bits), d(p.qber)});
        }
    }
    emit(csv, g, out);
}

void cmd_bounds(const Globals& g, std::ostream& out) {
    Csv csv;
    common_meta(csv, "bounds", g);
    csv.meta("steps", std::to_string(g.steps));
    bounds_table(csv, g.steps);
    emit(csv, g, out);
}

std::vector<std::string> point_cells(const AttackPoint& p) {
    return {d(p.info_per_bit), d(p.qber1), d(p.qber2), d(p.qber)};
}

void cmd_sweep(const Globals& g, bool best_only, std::ostream& out) {
    const Fraction xi{g.xi};
    const SweepGrid grid{g.steps};
    const std::vector<SweepRow> rows = sweep(grid, g.threads);

    double min_best_qber = 1.0;
    for (const SweepRow& r : rows) min_best_qber = std::min(min_best_qber, best_of(r).point.qber);

    Csv csv;
    common_meta(csv, "sweep", g);
    csv.meta("steps", std::to_string(g.steps));
    csv.meta("xi", d(g.xi));
    csv.meta("rows", best_only ? "best" : "all");
    csv.meta("min_best_qber_at_xi1", d(min_best_qber));
    csv.header({"c1", "c2", "c3", "config", "xi", "info_bits", "qber1", "qber2", "qber"});
    auto add = [&](const SweepRow& r, const EveConfig& cfg, const AttackPoint& p) {
        std::vector<std::string> cells{d(r.params.c1), d(r.params.c2), d(r.params.c3), to_string(cfg), d(g.xi)};
        for (auto& c : point_cells(scale_point(p, xi))) cells.push_back(std::move(c));
        csv.row(cells);
    };
    for (const SweepRow& r : rows) {
        if (best_only) {
            const BestConfig b = best_of(r);
            add(r, b.config, b.point);
        } else {
            for (std::size_t c = 0; c < r.points.size(); ++c) add(r, measuring_configs()[c], r.points[c]);
        }
    }
    emit(csv, g, out);
}

void cmd_gate_eval(const Globals& g, const CanonicalParams& p, std::ostream& out) {
    p.validate();
    const Fraction xi{g.xi};
    const BestConfig best = best_config(p);
    Csv csv;
    common_meta(csv, "gate-eval", g);
    csv.meta("c1", d(p.c1));
    csv.meta("c2", d(p.c2));
    csv.meta("c3", d(p.c3));
    csv.meta("xi", d(g.xi));
    csv.meta("best", to_string(best.config));
    csv.header({"config", "xi", "info_bits", "qber1", "qber2", "qber", "selected"});
    for (const EveConfig& cfg : all_configs()) {
        std::vector<std::string> cells{to_string(cfg), d(g.xi)};
        for (auto& c : point_cells(scale_point(run_attack(p, cfg), xi))) cells.push_back(std::move(c));
        cells.push_back(cfg == best.config ? "1" : "0");
        csv.row(cells);
    }
    emit(csv, g, out);
}

AliceParams parse_alice(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double x = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("--alice-fixed: malformed number '" + item + "'");
        v.push_back(x);
    }
    if (v.size() != 4) throw std::invalid_argument("--alice-fixed expects theta1,theta2,theta3,alpha4");
    return {{v[0], v[1], v[2]}, v[3]};
}

void eve_rows(Csv& csv, const EveParams& e) {
    csv.row({"Phi", d(e.Phi)});
    csv.row({"Omega", d(e.Omega)});
    csv.row({"phi1", d(e.phi1)});
    csv.row({"phi2", d(e.phi2)});
    csv.row({"omega1", d(e.omega1)});
    csv.row({"omega2", d(e.omega2)});
}

void alice_rows(Csv& csv, const AliceParams& a) {
    csv.row({"theta1", d(a.theta[0])});
    csv.row({"theta2", d(a.theta[1])});
    csv.row({"theta3", d(a.theta[2])});
    csv.row({"alpha4", d(a.alpha4)});
    const Pair s = alice_state(a);
    for (std::size_t i = 0; i < 4; ++i) {
        csv.row({"psi" + std::to_string(i) + "_re", d(s[i].real())});
        csv.row({"psi" + std::to_string(i) + "_im", d(s[i].imag())});
    }
}

void cmd_approx(const Globals& g, const std::optional<std::string>& alice_fixed, int restarts,
                std::optional<int> inner_restarts, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    Csv csv;
    common_meta(csv, "approx", g);
    if (alice_fixed) {
        const AliceParams a = parse_alice(*alice_fixed);
        const int r = inner_restarts.value_or(kFinalInnerRestarts);
        const InnerResult inner = inner_maximize(a, r, g.seed, g.threads);
        csv.meta("mode", "inner");
        csv.meta("inner_restarts", std::to_string(r));
        csv.header({"quantity", "value"});
        csv.row({"error", d(approximation_error(inner.g_max))});
        csv.row({"g_max", d(inner.g_max)});
        alice_rows(csv, a);
        eve_rows(csv, inner.eve);
    } else {
        const int r = inner_restarts.value_or(10);
        const ApproxResult res = outer_minimize(restarts, r, g.seed, g.threads);
        csv.meta("mode", "outer");
        csv.meta("restarts", std::to_string(restarts));
        csv.meta("inner_restarts", std::to_string(r));
        csv.header({"quantity", "value"});
        csv.row({"e_mm", d(res.e_mm)});
        csv.row({"g_value", d(res.g_value)});
        alice_rows(csv, res.alice);
        eve_rows(csv, res.eve);
    }
    emit(csv, g, out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    err << "approx: wall time " << fixed6(secs) << " s\n";
}

std::string matrix_text(const Mat2& m) {
    std::string s = "[";
    for (std::size_t r = 0; r < 2; ++r) {
        s += r ? ";" : "";
        for (std::size_t c = 0; c < 2; ++c) s += (c ? " " : "") + d(m(r, c).real()) + (m(r, c).imag() == 0.0 ? "" : "+" + d(m(r, c).imag()) + "i");
    }
    return s + "]";
}

void cmd_epr(const Globals& g, bool verify_bell, bool show_corrections, std::ostream& out) {
    const EprSummary s = epr_attack_summary();
    Csv csv;
    common_meta(csv, "epr", g);
    csv.meta("total_qber", d(s.total_qber));
    csv.meta("eve_info_bits", d(s.eve_info_bits));
    if (verify_bell) {
        const std::array<BellLabel, 4> labels{BellLabel::PhiPlus, BellLabel::PsiPlus, BellLabel::PhiMinus,
                                              BellLabel::PsiMinus};
        const Mat4 u = u1();
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i; j < 4; ++j) {
                const Pair bi = apply(u, Pair::basis(i));
                const Pair bj = apply(u, Pair::basis(j));
                const double overlap = std::abs(inner(bi, bj));
                const double expected = i == j ? 1.0 : 0.0;
                const bool ok = std::abs(overlap - expected) <= 1e-12;
                csv.note("bell_check " + std::string(to_string(labels[i])) + "," + std::string(to_string(labels[j])) +
                         " |overlap|=" + d(overlap) + (ok ? " pass" : " FAIL"));
            }
        }
    }
    if (show_corrections)
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a2 = 0; a2 < 2; ++a2)
                csv.note("E_" + std::to_string(a1) + std::to_string(a2) + "=" + matrix_text(correction_gate(a1, a2)));
    csv.header({"a1", "a2", "bell", "eve_a1", "eve_a2", "bob_a1", "bob_a2", "fidelity", "qber", "eve_info"});
    for (const EprAttackRecord& r : s.records) {
        csv.row({std::to_string(r.a1), std::to_string(r.a2), std::string(to_string(bell_label_for(r.a1, r.a2))),
                 std::to_string(r.eve_recovered.first), std::to_string(r.eve_recovered.second),
                 std::to_string(r.bob_recovered.first), std::to_string(r.bob_recovered.second), d(r.bob_fidelity),
                 d(r.qber_contrib), d(s.eve_info_bits)});
    }
    emit(csv, g, out);
}

struct ReconcileOptions {
    std::size_t n = 10000;
    double p = 0.05;
    std::optional<double> p_est;
    std::size_t passes = kDefaultCascadePasses;
    bool simple = false;
    std::size_t rounds = 3;
    std::size_t amplify_pairs = 0;
    double known_fraction = 0.5;
};

// Cascade needs a positive error estimate even for a noiseless channel.
constexpr double kNoiselessEstimate = 0.01;

void cmd_reconcile(const Globals& g, const ReconcileOptions& o, std::ostream& out) {
    if (o.n == 0) throw std::invalid_argument("reconcile: -n must be positive");
    const BitString alice = BitString::random(o.n, g.seed);
    const BitString bob = flip_channel(alice, o.p, g.seed + 1);

    Csv csv;
    common_meta(csv, "reconcile", g);
    csv.meta("n", std::to_string(o.n));
    csv.meta("p", d(o.p));
    csv.meta("channel_errors", std::to_string(hamming_distance(alice, bob)));

    if (o.simple) {
        const XorResult r = simple_xor_protocol(alice, bob, o.rounds, g.seed + 2);
        csv.meta("protocol", "simple-xor");
        csv.meta("rounds", std::to_string(o.rounds));
        csv.meta("leaked_bits", std::to_string(r.report.leaked_bits));
        csv.meta("residual_errors", std::to_string(r.report.residual_errors));
        csv.header({"round", "length", "errors", "discarded_pairs"});
        for (std::size_t i = 0; i < r.rounds.size(); ++i) {
            const XorRound& x = r.rounds[i];
            csv.row({std::to_string(i + 1), std::to_string(x.length), std::to_string(x.errors),
                     std::to_string(x.discarded_by_mismatch)});
        }
        emit(csv, g, out);
        return;
    }

    const double p_est = o.p_est.value_or(o.p > 0.0 ? o.p : kNoiselessEstimate);
    const CascadeResult r = cascade(alice, bob, p_est, o.passes, g.seed + 2);
    csv.meta("protocol", "cascade");
    csv.meta("p_est", d(p_est));
    csv.meta("k1", std::to_string(cascade_block_size(p_est)));
    csv.header({"quantity", "value"});
    csv.row({"residual_errors", std::to_string(r.report.residual_errors)});
    csv.row({"leaked_bits", std::to_string(r.report.leaked_bits)});
    csv.row({"shannon_floor", d(shannon_reconciliation_bound(static_cast<double>(o.n), o.p))});
    csv.row({"passes", std::to_string(r.report.passes)});
    csv.row({"final_length", std::to_string(r.report.final_length)});

    if (o.amplify_pairs > 0) {
        if (!(o.known_fraction >= 0.0 && o.known_fraction <= 1.0))
            throw std::invalid_argument("reconcile: --known-fraction outside [0,1]");
        const BitString eve_view = flip_channel(BitString{std::vector<std::uint8_t>(o.n, 0)}, o.known_fraction, g.seed + 3);
        std::vector<bool> known(o.n);
        for (std::size_t i = 0; i < o.n; ++i) known[i] = eve_view[i] == 1;
        const KnowledgeMask mask{std::move(known)};
        const AmplifiedString amp = privacy_amplify(r.corrected, mask, o.amplify_pairs, g.seed + 4);
        csv.row({"known_fraction_before", d(mask.known_fraction())});
        csv.row({"amplified_length", std::to_string(amp.bits.size())});
        csv.row({"known_fraction_after", d(amp.mask.known_fraction())});
    }
    emit(csv, g, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact simulations of intercept-resend attacks on BB84 and its entangled-pair variant"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
    app.add_option("--steps", g.steps, "Grid points per axis / table rows")->capture_default_str()->check(CLI::Range(2, 4097));
    app.add_option("--xi", g.xi, "Fraction of intercepted transmissions")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    app.add_option("--out", g.out, "Write CSV to this file instead of stdout");
    app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1U, 1024U));

    auto* bb84 = app.add_subcommand("bb84", "BB84 under full intercept-resend");
    bool bb84_bounds = false;
    bb84->add_flag("--bounds", bb84_bounds, "Tabulate the analytic bounds instead of the xi line");

    app.add_subcommand("bounds", "Intercept-resend, incoherent and six-state bounds over QBER");

    auto* sw = app.add_subcommand("sweep", "Attack outcomes over the canonical-gate lattice");
    bool best_only = false;
    sw->add_flag("--best-only", best_only, "Only the best-slope configuration per gate");

    auto* ge = app.add_subcommand("gate-eval", "All Eve configurations for one gate");
    CanonicalParams gate;
    ge->add_option("--c1", gate.c1)->required();
    ge->add_option("--c2", gate.c2)->required();
    ge->add_option("--c3", gate.c3)->required();

    auto* ap = app.add_subcommand("approx", "Product-state approximation max-min error");
    std::optional<std::string> alice_fixed;
    int restarts = 2;
    std::optional<int> inner_restarts;
    ap->add_option("--alice-fixed", alice_fixed, "theta1,theta2,theta3,alpha4: only maximize over Eve");
    ap->add_option("--restarts", restarts, "Annealing chains")->capture_default_str()->check(CLI::PositiveNumber);
    ap->add_option("--inner-restarts", inner_restarts, "Simplex restarts per inner maximization")->check(CLI::PositiveNumber);

    auto* ep = app.add_subcommand("epr", "EPR-pair substitution attack on zz pairs");
    bool verify_bell = false, show_corrections = false;
    ep->add_flag("--verify-bell", verify_bell, "Check orthonormality of the U1 images");
    ep->add_flag("--show-corrections", show_corrections, "Print Eve's correction gates");

    auto* rc = app.add_subcommand("reconcile", "Bit-flip channel followed by Cascade or XOR reconciliation");
    ReconcileOptions ro;
    rc->add_option("-n,--length", ro.n, "Key length")->capture_default_str();
    rc->add_option("-p,--flip", ro.p, "Channel flip probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    rc->add_option("--p-est", ro.p_est, "Error estimate for Cascade block sizes");
    rc->add_option("--passes", ro.passes, "Cascade passes")->capture_default_str();
    rc->add_flag("--simple", ro.simple, "Use the XOR compare-and-discard protocol");
    rc->add_option("--rounds", ro.rounds, "Rounds of the XOR protocol")->capture_default_str();
    rc->add_option("--amplify-pairs", ro.amplify_pairs, "Privacy amplification pairs after Cascade");
    rc->add_option("--known-fraction", ro.known_fraction, "Fraction of bits Eve knows before amplification")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*bb84) cmd_bb84(g, bb84_bounds, out);
        else if (app.got_subcommand("bounds")) cmd_bounds(g, out);
        else if (*sw) cmd_sweep(g, best_only, out);
        else if (*ge) cmd_gate_eval(g, gate, out);
        else if (*ap) cmd_approx(g, alice_fixed, restarts, inner_restarts, out, err);
        else if (*ep) cmd_epr(g, verify_bell, show_corrections, out);
        else if (*rc) cmd_reconcile(g, ro, out);
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace qpair::cli
