#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qpair");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = qpair::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

// Metadata lines first, then exactly one header, then rows.
void check_layout(const std::string& text, const std::string& header) {
    const auto ls = lines(text);
    std::size_t i = 0;
    while (i < ls.size() && ls[i].starts_with("#")) ++i;
    REQUIRE(i < ls.size());
    CHECK(ls[i] == header);
    for (++i; i < ls.size(); ++i) CHECK(!ls[i].starts_with("#"));
}

}  // namespace

TEST_CASE("format_double uses 12 significant digits") {
    CHECK(qpair::cli::format_double(0.5) == "0.5");
    CHECK(qpair::cli::format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(qpair::cli::format_double(-0.0) == "0");
}

TEST_CASE("bb84 summary and xi line") {
    const auto r = invoke({"bb84"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# info_per_bit=0.500000 qber=0.250000") != std::string::npos);
    check_layout(r.out, "xi,info_bits,qber");
    CHECK(lines(r.out).back() == "1,0.5,0.25");

    const auto half = invoke({"--xi", "0.5", "bb84"});
    CHECK(half.out.find("# info_per_bit=0.250000 qber=0.125000") != std::string::npos);
}

TEST_CASE("bounds table") {
    const auto r = invoke({"--steps", "5", "bounds"});
    REQUIRE(r.code == 0);
    check_layout(r.out, "q,ir,incoherent,six_state");
    CHECK(lines(r.out).back() == "0.5,0.5,1,");
}

TEST_CASE("gate-eval marks the best configuration") {
    const auto r = invoke({"gate-eval", "--c1", "0", "--c2", "0", "--c3", "0"});
    REQUIRE(r.code == 0);
    check_layout(r.out, "config,xi,info_bits,qber1,qber2,qber,selected");
    CHECK(r.out.find("# best=zz") != std::string::npos);
    CHECK(r.out.find("zz,1,0.5,0.25,0.25,0.25,1") != std::string::npos);
}

TEST_CASE("sweep is byte identical across thread counts") {
    const auto a = invoke({"--steps", "3", "--threads", "1", "sweep"});
    const auto b = invoke({"--steps", "3", "--threads", "4", "sweep"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    check_layout(a.out, "c1,c2,c3,config,xi,info_bits,qber1,qber2,qber");
    CHECK(lines(a.out).size() > 27 * 6);
    const auto best = invoke({"--steps", "3", "sweep", "--best-only"});
    CHECK(best.out.find("# min_best_qber_at_xi1=0.25") != std::string::npos);
}

TEST_CASE("epr and reconcile outputs") {
    const auto e = invoke({"epr"});
    REQUIRE(e.code == 0);
    CHECK(e.out.find("# total_qber=0") != std::string::npos);
    CHECK(e.out.find("# eve_info_bits=2") != std::string::npos);

    const auto c = invoke({"reconcile", "-n", "2000", "-p", "0.05"});
    REQUIRE(c.code == 0);
    CHECK(c.out.find("residual_errors,0") != std::string::npos);
    CHECK(invoke({"reconcile", "-n", "2000", "-p", "0.05"}).out == c.out);
    CHECK(invoke({"--seed", "7", "reconcile", "-n", "2000", "-p", "0.05"}).out != c.out);
}

TEST_CASE("errors map to exit codes") {
    CHECK(invoke({}).code != 0);
    CHECK(invoke({"gate-eval", "--c1", "0"}).code != 0);
    const auto bad = invoke({"gate-eval", "--c1", "-1", "--c2", "0", "--c3", "0"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error:") != std::string::npos);
    CHECK(invoke({"--xi", "2", "bb84"}).code != 0);
    CHECK(invoke({"--out", "/nonexistent-dir/x.csv", "bb84"}).code == 1);
}
