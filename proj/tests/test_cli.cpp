#include "doctest.h"

#include "dbn/cli.hpp"
#include "dbn/schema.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace dbn;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string(P_tmpdir) + "/dbnlab_test_" + name;
  std::ofstream(path) << text;
  return path;
}

json first_record(const std::string& out) { return json::parse(out.substr(0, out.find('\n'))); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("theta record carries the identity residual") {
  const Result r = run({"theta", "--x", "2"});
  REQUIRE(r.code == 0);
  const json j = first_record(r.out);
  CHECK(j["identity_residual"].get<double>() < 1e-12);
  CHECK(j.contains("error_estimate"));
}

TEST_CASE("casebook case 2 reports ln 2") {
  const Result r = run({"casebook", "--case", "2"});
  REQUIRE(r.code == 0);
  const json j = first_record(r.out);
  CHECK(std::abs(j["threshold"].get<double>() - 0.693147) < 1e-6);
  CHECK(j["passed"].get<bool>());
}

TEST_CASE("zeros in an empty region of cos") {
  const std::string m = write_temp("cos.json", R"({"kind": "SymmetricAtoms", "atoms": [[1, 1]]})");
  const Result r = run({"zeros", "--measure", m, "--rect", "0.1,1,-1,1"});
  REQUIRE(r.code == 0);
  const json j = first_record(r.out);
  CHECK(j["count"] == 0);
  CHECK(j["zeros"].empty());
}

TEST_CASE("eval on a named density") {
  const std::string m = write_temp("gauss.json", R"({"kind": "NamedDensity", "params": {"density": "Gaussian", "b0": 1, "K": 1}})");
  const Result r = run({"eval", "--measure", m, "--z", "0"});
  REQUIRE(r.code == 0);
  const json j = first_record(r.out);
  CHECK(j["value"][0].get<double>() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(j.contains("error_estimate"));
}

TEST_CASE("schema violations name the JSON path") {
  const std::string m = write_temp("bad.json", R"({"kind": "SymmetricAtoms", "atoms": [[1, 1], [2, "x"]]})");
  const Result r = run({"eval", "--measure", m, "--z", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("$.atoms[1][1]") != std::string::npos);
  const std::string k = write_temp("kind.json", R"({"kind": "Nope"})");
  CHECK(run({"eval", "--measure", k, "--z", "1"}).code == 2);
}

TEST_CASE("measure round trip through JSON") {
  const json spec = json::parse(R"({"kind": "MultipliedMeasure", "params": {"lambda": 0.2, "normalized": true},
      "base": {"kind": "GaussianConvolution", "params": {"b0": 3}, "atoms": [[0, 0.6], [1, 0.4]]}})");
  const EvenMeasure m = parse_measure(spec);
  CHECK(m.kind == MeasureKind::MultipliedMeasure);
  CHECK(measure_to_json(m) == spec);
}

TEST_CASE("usage errors") {
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"no-such-command"}).err.find("unknown subcommand") != std::string::npos);
  CHECK(run({"theta"}).code == 2);
  CHECK(run({"xi", "--z", "1,2,3"}).code == 2);
  CHECK(run({"--digits", "10", "theta", "--x", "1"}).code == 2);
}

TEST_CASE("complex and rectangle parsing") {
  CHECK(cli::parse_complex("1.5") == std::complex<double>(1.5, 0));
  CHECK(cli::parse_complex("1.5,-2") == std::complex<double>(1.5, -2));
  CHECK_THROWS(cli::parse_complex("a,b"));
  const Rectangle r = cli::parse_rect("-1,2,-3,4");
  CHECK(r.re_min == -1);
  CHECK(r.im_max == 4);
  CHECK_THROWS(cli::parse_rect("1,2,3"));
}

TEST_CASE("flow CSV columns") {
  const std::string f = write_temp("flow.json", R"({"positions": [-1, 0.5, 2]})");
  const Result r = run({"flow", "--init", f, "--t-end", "0.5", "--checkpoints", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,x1,x2,x3,hamiltonian,energy\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
}

TEST_CASE("bisect on a bracket that is already real") {
  const std::string m = write_temp("cos2.json", R"({"kind": "SymmetricAtoms", "atoms": [[1, 1]]})");
  const Result r = run({"bisect", "--measure", m, "--lo", "-5", "--hi", "1", "--rect", "-10,10,-2,2"});
  CHECK(r.code == 1);
  CHECK(first_record(r.out)["error"] == "bracket_invalid");
}

TEST_CASE("lehmer records from the zero table") {
  const Result r = run({"lehmer", "--zeros-file", DBN_TEST_DATA "/zeta_zeros_100.txt", "--k-from", "30", "--k-to",
                        "40", "--radius", "100"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int n = 0, skipped = 0;
  while (std::getline(in, line)) {
    const json j = json::parse(line);
    if (j["record"] == "lehmer" && j.contains("lambda_k")) {
      CHECK(j["lambda_k"].get<double>() < 0);
      CHECK(j.contains("error_estimate"));
      ++n;
    }
    if (j.contains("skipped")) ++skipped;
  }
  CHECK(n == 1);
  CHECK(skipped == 10);
}

TEST_CASE("leeyang on the planted system") {
  const std::string s = write_temp("sys.json", R"({"n": 2, "J": [[0, -2], [-2, 0]], "beta": 1, "search_mode": true})");
  const Result r = run({"leeyang", "--system", s});
  REQUIRE(r.code == 0);
  CHECK_FALSE(first_record(r.out)["lee_yang"].get<bool>());
  const std::string bad = write_temp("sys_bad.json", R"({"n": 2, "J": [[0, 1]], "beta": 1})");
  const Result b = run({"leeyang", "--system", bad});
  CHECK(b.code == 2);
  CHECK(b.err.find("$.J") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  CHECK(run({"xi", "--z", "3,0.5"}).out == run({"xi", "--z", "3,0.5"}).out);
}

}  // TEST_SUITE
