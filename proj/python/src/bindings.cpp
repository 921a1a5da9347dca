#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpair/bb84.hpp"
#include "qpair/entangled.hpp"
#include "qpair/epr.hpp"
#include "qpair/info.hpp"
#include "qpair/product_approx.hpp"
#include "qpair/reconciliation.hpp"

namespace py = pybind11;
using namespace qpair;

namespace {

py::dict point_dict(const AttackPoint& p) {
    py::dict d;
    d["info_per_bit"] = p.info_per_bit;
    d["qber1"] = p.qber1;
    d["qber2"] = p.qber2;
    d["qber"] = p.qber;
    return d;
}

py::dict report_dict(const ReconciliationReport& r) {
    py::dict d;
    d["residual_errors"] = r.residual_errors;
    d["leaked_bits"] = r.leaked_bits;
    d["passes"] = r.passes;
    d["final_length"] = r.final_length;
    return d;
}

std::vector<std::vector<cplx>> rows_of(const Mat4& m) {
    std::vector<std::vector<cplx>> out(4, std::vector<cplx>(4));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) out[r][c] = m(r, c);
    return out;
}

BitString to_bits(const std::vector<int>& v) {
    std::vector<std::uint8_t> bits;
    bits.reserve(v.size());
    for (int b : v) {
        if (b != 0 && b != 1) throw std::invalid_argument("bit strings must contain only 0 and 1");
        bits.push_back(static_cast<std::uint8_t>(b));
    }
    return BitString{std::move(bits)};
}

std::vector<int> from_bits(const BitString& s) { return {s.bits().begin(), s.bits().end()}; }

AliceParams alice_from(const std::array<double, 3>& theta, double alpha4) { return {theta, alpha4}; }

EveParams eve_from(const std::array<double, 6>& e) { return {e[0], e[1], e[2], e[3], e[4], e[5]}; }

std::array<double, 6> eve_to(const EveParams& e) { return {e.Phi, e.Omega, e.phi1, e.phi2, e.omega1, e.omega2}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact intercept-resend simulations for BB84 and its entangled-pair variant";

    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

    // info-theory
    m.def("binary_entropy", &binary_entropy, py::arg("p"));
    m.def("ir_bound", &ir_bound, py::arg("q"));
    m.def("incoherent_bound", &incoherent_bound, py::arg("q"));
    m.def("six_state_bound", &six_state_bound, py::arg("q"));
    m.def("shannon_reconciliation_bound", &shannon_reconciliation_bound, py::arg("n"), py::arg("p"));
    m.def("werner_fidelity", &werner_fidelity, py::arg("n"), py::arg("m"), py::arg("d"));
    m.def("incoherent_curve", [](double eta) {
        const IncoherentPoint p = incoherent_curve(eta);
        return py::make_tuple(p.qber, p.info);
    }, py::arg("eta"));

    // bb84
    m.def("ir_attack_exact", [] {
        const SingleAttackOutcome o = ir_attack_exact();
        return py::make_tuple(o.info_bits, o.qber);
    }, "(info_per_bit, qber) of the full intercept-resend attack");

    // gates and the entangled protocol
    m.def("canonical_gate", [](double c1, double c2, double c3) { return rows_of(canonical_gate({c1, c2, c3})); },
          py::arg("c1"), py::arg("c2"), py::arg("c3"));
    m.def("configs", [] {
        std::vector<std::string> names;
        for (const EveConfig& c : all_configs()) names.push_back(to_string(c));
        return names;
    });
    m.def("run_attack", [](double c1, double c2, double c3, const std::string& config) {
        return point_dict(run_attack({c1, c2, c3}, parse_config(config)));
    }, py::arg("c1"), py::arg("c2"), py::arg("c3"), py::arg("config"));
    m.def("best_config", [](double c1, double c2, double c3) {
        const BestConfig b = best_config({c1, c2, c3});
        return py::make_tuple(to_string(b.config), point_dict(b.point));
    }, py::arg("c1"), py::arg("c2"), py::arg("c3"));
    m.def("sweep", [](int steps, unsigned threads) {
        std::vector<SweepRow> rows;
        {
            py::gil_scoped_release release;
            rows = sweep(SweepGrid{steps}, threads);
        }
        py::list out;
        for (const SweepRow& r : rows) {
            py::dict pts;
            for (std::size_t c = 0; c < r.points.size(); ++c) pts[py::str(to_string(measuring_configs()[c]))] = point_dict(r.points[c]);
            out.append(py::make_tuple(r.params.c1, r.params.c2, r.params.c3, pts));
        }
        return out;
    }, py::arg("steps") = 33, py::arg("threads") = 1);
    m.def("envelope_c2", [](int samples) {
        std::vector<std::pair<double, double>> out;
        for (const AttackPoint& p : envelope_c2(samples)) out.emplace_back(p.qber, p.info_per_bit);
        return out;
    }, py::arg("samples"), "(qber, info) best-config points along c1 = c3 = 0");

    // product approximation
    m.def("g_function", [](const std::array<double, 3>& theta, double alpha4, const std::array<double, 6>& eve) {
        return g_function(alice_from(theta, alpha4), eve_from(eve));
    }, py::arg("theta"), py::arg("alpha4"), py::arg("eve"));
    m.def("inner_maximize", [](const std::array<double, 3>& theta, double alpha4, int restarts, std::uint64_t seed) {
        const InnerResult r = inner_maximize(alice_from(theta, alpha4), restarts, seed);
        return py::make_tuple(r.g_max, eve_to(r.eve));
    }, py::arg("theta"), py::arg("alpha4"), py::arg("restarts") = 100, py::arg("seed") = 42);
    m.def("outer_minimize", [](int restarts, int inner_restarts, std::uint64_t seed) {
        ApproxResult r;
        {
            py::gil_scoped_release release;
            r = outer_minimize(restarts, inner_restarts, seed);
        }
        py::dict d;
        d["e_mm"] = r.e_mm;
        d["g_value"] = r.g_value;
        d["theta"] = r.alice.theta;
        d["alpha4"] = r.alice.alpha4;
        d["eve"] = eve_to(r.eve);
        return d;
    }, py::arg("restarts") = 2, py::arg("inner_restarts") = 10, py::arg("seed") = 42);
    m.def("approximation_error", &approximation_error, py::arg("g"));

    // epr attack
    m.def("epr_attack", [](int a1, int a2) {
        const EprAttackRecord r = run_epr_attack(a1, a2);
        py::dict d;
        d["eve"] = r.eve_recovered;
        d["bob"] = r.bob_recovered;
        d["fidelity"] = r.bob_fidelity;
        d["qber"] = r.qber_contrib;
        return d;
    }, py::arg("a1"), py::arg("a2"));

    // reconciliation
    m.def("random_bits", [](std::size_t n, std::uint64_t seed) { return from_bits(BitString::random(n, seed)); },
          py::arg("n"), py::arg("seed"));
    m.def("flip_channel", [](const std::vector<int>& s, double p, std::uint64_t seed) {
        return from_bits(flip_channel(to_bits(s), p, seed));
    }, py::arg("bits"), py::arg("p"), py::arg("seed"));
    m.def("cascade", [](const std::vector<int>& a, const std::vector<int>& b, double p_est, std::size_t passes,
                        std::uint64_t seed) {
        const CascadeResult r = cascade(to_bits(a), to_bits(b), p_est, passes, seed);
        return py::make_tuple(from_bits(r.corrected), report_dict(r.report));
    }, py::arg("a"), py::arg("b"), py::arg("p_est"), py::arg("passes") = kDefaultCascadePasses, py::arg("seed") = 42);
    m.def("privacy_amplify", [](const std::vector<int>& a, const std::vector<bool>& known, std::size_t pairs,
                                std::uint64_t seed) {
        const AmplifiedString r = privacy_amplify(to_bits(a), KnowledgeMask{known}, pairs, seed);
        return py::make_tuple(from_bits(r.bits), r.mask.known());
    }, py::arg("bits"), py::arg("known"), py::arg("pairs"), py::arg("seed"));
}
