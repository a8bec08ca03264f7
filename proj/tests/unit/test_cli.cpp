#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "clsi/cli/commands.hpp"
#include "clsi/cli/config.hpp"

using namespace clsi::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

RunResult run_json(const json& doc) { return run(parse_config(doc)); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("clsi_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_binary(const fs::path& dir, const json& doc, const std::string& extra = "") {
  std::ofstream(dir / "config.json") << doc.dump();
  const std::string cmd = std::string(CLSI_BINARY) + " --quiet --config " + (dir / "config.json").string() +
                          " --out " + (dir / "out").string() + " " + extra + " 2> " + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config(json{{"command", "car-check"}, {"n", 0}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"command", "car-check"}, {"n", 13}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"command", "bogus"}, {"n", 2}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"n", 2}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"command", "lsi-scan"}, {"n", 2}}), ConfigError);  // no seed
  CHECK_THROWS_AS(parse_config(json{{"command", "lsi-scan"}, {"n", 2}, {"seed", -1}}), ConfigError);
  CHECK_NOTHROW(parse_config(json{{"command", "car-check"}, {"n", 12}}));
  const RunConfig cfg = parse_config(json{{"command", "lsi-scan"}, {"n", 1}, {"seed", 5}, {"tolerances", {{"lsi", 1e-7}}}});
  CHECK(cfg.tolerance("lsi", 0.0) == 1e-7);
  CHECK(cfg.tolerance("other", 3.0) == 3.0);
}

TEST_CASE("element and form specs") {
  const clsi::ModeSpace m(2);
  const auto a = parse_element(json{{"monomials", {{"", 1.0}, {"1 2", json::array({0.0, 2.0})}}}}, m);
  CHECK(a.coeff(0) == clsi::cplx(1.0, 0.0));
  CHECK(a.coeff(0b11) == clsi::cplx(0.0, 2.0));
  CHECK_THROWS_AS(parse_element(json{{"monomials", {{"2 1", 1.0}}}}, m), ConfigError);
  CHECK_THROWS_AS(parse_element(json{{"monomials", {{"3", 1.0}}}}, m), ConfigError);
  CHECK_THROWS_AS(parse_element(json{{"monomials", {{"x", 1.0}}}}, m), ConfigError);
  const auto r = parse_element(json{{"generator", "random_selfadjoint"}, {"seed", 3}, {"norm", 0.1}}, m);
  CHECK(r.norm() == doctest::Approx(0.1));
  CHECK_THROWS_AS(parse_form(json{{"type", "dgamma"}}, m), ConfigError);
  CHECK_THROWS_AS(parse_form(json{{"type", "custom"}, {"H", json::array({json::array({1, 2})})}}, m), ConfigError);
  CHECK_THROWS_AS(parse_form(json{{"type", "nope"}}, m), ConfigError);
  CHECK(parse_form(json{{"type", "number"}, {"shift", 0.5}}, m).lambda0() == doctest::Approx(0.5));
  const clsi::Mat spd = parse_matrix(json{{"generator", "random_spd"}, {"mu", 0.5}, {"seed", 1}}, 3, 3);
  CHECK(clsi::hermitian_spectrum(spd).min() == doctest::Approx(0.5));
}

TEST_CASE("car-check") {
  const RunResult r = run_json({{"command", "car-check"}, {"n", 4}});
  CHECK(r.passed());
  CHECK(r.document["schema_version"] == kSchemaVersion);
  CHECK(r.document["tool_version"] == kToolVersion);
  CHECK(r.document["results"]["max_deviation"].get<double>() <= 1e-12);
}

TEST_CASE("runs are deterministic") {
  const json doc{{"command", "lsi-scan"}, {"n", 2}, {"seed", 77}, {"samples", 200}, {"starts", 2},
                 {"best_constants", false}};
  const RunResult a = run_json(doc);
  const RunResult b = run_json(doc);
  CHECK(a.document.dump() == b.document.dump());
  CHECK(a.tables == b.tables);
}

TEST_CASE("lsi-scan reports the one-mode constant and the witness") {
  const RunResult ok = run_json({{"command", "lsi-scan"}, {"n", 1}, {"seed", 1}, {"samples", 500}});
  CHECK(ok.passed());
  const double beta_star = ok.document["results"]["best_constants"]["beta_star"].get<double>();
  CHECK(beta_star >= 1.99);
  CHECK(beta_star <= 2.0 + 1e-6);
  CHECK(ok.tables.count("beta_scan.csv") == 1);

  const RunResult bad = run_json({{"command", "lsi-scan"},
                                  {"n", 1},
                                  {"seed", 1},
                                  {"samples", 500},
                                  {"beta", 0.9},
                                  {"best_constants", false},
                                  {"witness", {{"monomials", {{"", 1}, {"1", 1}}}}}});
  CHECK_FALSE(bad.passed());
  CHECK(bad.document["results"]["witness_deficiency"].get<double>() == doctest::Approx(std::log(2.0) - 0.45));
  CHECK(bad.failure_json()["failures"][0]["verdict"] == "lsi_certificate");
}

TEST_CASE("ground-state") {
  const RunResult n = run_json({{"command", "ground-state"}, {"n", 2}, {"seed", 2}, {"samples", 300}, {"gamma", 0.0}});
  CHECK(n.passed());
  CHECK(n.document["results"]["ground_state"]["multiplicity"] == 1);
  CHECK(n.document["results"]["ground_state"]["lambda0"].get<double>() == doctest::Approx(0.0));

  const RunResult s = run_json({{"command", "ground-state"},
                                {"n", 2},
                                {"seed", 2},
                                {"samples", 300},
                                {"gamma", 1.0},
                                {"form", {{"type", "number"}, {"shift", 1.0}}}});
  CHECK(s.passed());
  CHECK(s.document["results"]["ground_state"]["lambda0"].get<double>() == doctest::Approx(1.0));

  const RunResult d = run_json({{"command", "ground-state"},
                                {"n", 2},
                                {"seed", 3},
                                {"samples", 500},
                                {"auto_measure", true},
                                {"form", {{"type", "degenerate"}}}});
  CHECK(d.passed());
  CHECK(d.document["results"]["ground_state"]["multiplicity"] == 2);
  CHECK(d.document["results"]["degeneracy"]["bound"].get<double>() >= 2.0 - 1e-6);

  CHECK_THROWS_AS(run_json({{"command", "ground-state"}, {"n", 2}, {"seed", 2}}), ConfigError);
}

TEST_CASE("perturb with h = 0 is a no-op") {
  const RunResult r = run_json({{"command", "perturb"},
                                {"n", 2},
                                {"seed", 4},
                                {"samples", 300},
                                {"h", {{"monomials", json::object()}}}});
  CHECK(r.passed());
  const json& p = r.document["results"]["perturbation"];
  CHECK(p["c_beta"].get<double>() == doctest::Approx(0.0));
  CHECK(p["lambda_h"].get<double>() == doctest::Approx(p["lambda_0"].get<double>()));
  CHECK_THROWS_AS(run_json({{"command", "perturb"}, {"n", 2}, {"seed", 4}}), ConfigError);
}

TEST_CASE("converge classifies the shrinking family as all-true") {
  const RunResult r = run_json({{"command", "converge"},
                                {"n", 2},
                                {"seed", 1},
                                {"family", "norm_to_zero"},
                                {"expect", {{"norm_to_zero", true}, {"vanishing", true}, {"uniformly_integrable", true}}}});
  CHECK(r.passed());
  CHECK(r.tables.count("diagnostics.csv") == 1);
  CHECK(r.tables.at("diagnostics.csv").rfind("n,k,tail_psi,tail_self,norm,overlap", 0) == 0);

  const RunResult e = run_json({{"command", "converge"}, {"n", 4}, {"seed", 1}, {"family", "escaping"}});
  CHECK(e.document["results"]["classification"]["vanishing"] == true);
  CHECK(e.document["results"]["classification"]["uniformly_integrable"] == false);
  CHECK_THROWS_AS(run_json({{"command", "converge"}, {"n", 3}, {"seed", 1}, {"family", "escaping"}}), ConfigError);
}

TEST_CASE("physical demo at three modes") {
  const RunResult r = run_json({{"command", "physical"},
                                {"n", 3},
                                {"seed", 5},
                                {"samples", 500},
                                {"A", {{"generator", "random_spd"}, {"mu", 0.5}, {"seed", 9}}},
                                {"alpha", {{"generator", "random_selfadjoint"}, {"seed", 4}, {"norm", 0.1}}}});
  CHECK(r.passed());
  CHECK(r.document["results"]["ground"]["multiplicity"] == 1);
  CHECK(r.document["results"]["ground"]["strictly_positive"] == true);
}

TEST_CASE("binary exit codes and outputs") {
  const fs::path ok = scratch("ok");
  CHECK(run_binary(ok, {{"command", "car-check"}, {"n", 3}}) == 0);
  const json result = json::parse(slurp(ok / "out" / "result.json"));
  CHECK(result.contains("wall_time_seconds"));
  CHECK(result["passed"] == true);

  const fs::path bad_n = scratch("bad_n");
  CHECK(run_binary(bad_n, {{"command", "car-check"}, {"n", 13}}) == 2);
  CHECK(slurp(bad_n / "stderr.txt").find("\"config\"") != std::string::npos);

  const fs::path fail = scratch("fail");
  CHECK(run_binary(fail, {{"command", "lsi-scan"}, {"n", 1}, {"beta", 0.9}, {"best_constants", false}},
                   "--seed 3 --samples 200") == 1);
  const json failures = json::parse(slurp(fail / "stderr.txt"));
  CHECK(failures["failures"].size() >= 1u);
  const json written = json::parse(slurp(fail / "out" / "result.json"));
  CHECK(written["config"]["seed"] == 3);
  CHECK(written["config"]["samples"] == 200);

  // Reruns agree byte for byte once wall time is removed.
  const fs::path again = scratch("again");
  CHECK(run_binary(again, {{"command", "lsi-scan"}, {"n", 1}, {"beta", 0.9}, {"best_constants", false}},
                   "--seed 3 --samples 200") == 1);
  json first = written, second = json::parse(slurp(again / "out" / "result.json"));
  first.erase("wall_time_seconds");
  second.erase("wall_time_seconds");
  CHECK(first.dump() == second.dump());
  CHECK(slurp(fail / "out" / "lsi_samples.csv") == slurp(again / "out" / "lsi_samples.csv"));
}
