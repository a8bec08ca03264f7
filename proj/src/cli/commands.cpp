#include "clsi/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "clsi/entropy.hpp"
#include "clsi/families.hpp"
#include "clsi/identities.hpp"
#include "clsi/lsi.hpp"
#include "clsi/perturbation.hpp"
#include "clsi/random.hpp"
#include "clsi/sampling.hpp"

namespace clsi::cli {

namespace {

using nlohmann::json;

// Collects verdicts and margins in insertion order of their names.
class Recorder {
 public:
  explicit Recorder(RunResult& r) : r_(r) {
    r_.document["verdicts"] = json::object();
    r_.document["worst_margins"] = json::object();
  }

  void verdict(const std::string& name, bool ok, double margin, const std::string& detail = "") {
    r_.document["verdicts"][name] = ok;
    r_.document["worst_margins"][name] = margin;
    if (!ok) r_.failures.push_back({name, detail.empty() ? "margin " + format(margin) : detail});
  }

  void table(const std::string& file, std::string csv) { r_.tables[file] = std::move(csv); }

 private:
  static std::string format(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
  }
  RunResult& r_;
};

std::string csv_number(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

State parse_state(const json& params, const char* key, const ModeSpace& m) {
  if (!params.contains(key)) return State::tracial(m);
  const json& spec = params[key];
  if (spec.is_string() && spec.get<std::string>() == "tau") return State::tracial(m);
  try {
    if (spec.is_object() && spec.value("generator", "") == "random_state") {
      if (!spec.contains("seed") || !(spec["seed"].is_number_integer() && spec["seed"].get<std::int64_t>() >= 0)) {
        throw ConfigError(std::string("'") + key + "' generator needs an unsigned 'seed'");
      }
      Rng rng(spec["seed"].get<std::uint64_t>());
      return random_state(m, rng);
    }
    State s(parse_element(spec, m));
    return spec.value("normalize", false) ? s.normalized() : s;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'") + key + "' is not a state: " + e.what());
  }
}

LsiOptions lsi_options(const RunConfig& cfg) {
  LsiOptions o;
  o.seed = cfg.require_seed();
  if (cfg.samples > 0) o.samples = cfg.samples;
  o.starts = cfg.params.value("starts", o.starts);
  o.near_samples = cfg.params.value("near_samples", o.near_samples);
  o.max_iterations = cfg.params.value("max_iterations", o.max_iterations);
  o.tol = cfg.tolerance("lsi", o.tol);
  return o;
}

EnergyForm form_of(const RunConfig& cfg, const ModeSpace& m, const char* key = "form") {
  if (!cfg.params.contains(key)) return clifford_dirichlet_form(m).form;
  return parse_form(cfg.params[key], m);
}

double number(const RunConfig& cfg, const char* key, double fallback) {
  if (!cfg.params.contains(key)) return fallback;
  if (!cfg.params[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return cfg.params[key].get<double>();
}

std::string samples_csv(const LsiCertificate& c) {
  std::string csv = "source,entropy,energy,deficiency\n";
  for (const auto& s : c.table) {
    csv += s.source + "," + csv_number(s.entropy) + "," + csv_number(s.energy) + "," + csv_number(s.deficiency) + "\n";
  }
  return csv;
}

void certificate_verdict(Recorder& rec, const std::string& name, const LsiCertificate& c) {
  rec.verdict(name, c.valid, -c.worst_deficiency,
              c.valid ? "" : "deficiency " + csv_number(c.worst_deficiency) + " at " + c.worst_source + " sample");
}

void run_car_check(const RunConfig& cfg, RunResult& r, Recorder& rec) {
  const ModeSpace m(cfg.n);
  const std::size_t samples = cfg.samples > 0 ? cfg.samples : 100;
  const std::uint64_t seed = cfg.seed.value_or(1);
  const double tol = cfg.tolerance("identity", 1e-12);
  const IdentitySuite suite = identity_suite(m, samples, seed, tol);
  r.document["results"] = to_json(suite);
  for (const auto& c : suite.checks) rec.verdict(c.property, c.verdict, c.worst_margin);
}

void run_lsi_scan(const RunConfig& cfg, RunResult& r, Recorder& rec) {
  const ModeSpace m(cfg.n);
  const EnergyForm e = form_of(cfg, m);
  const State psi = parse_state(cfg.params, "psi", m);
  const double beta = number(cfg, "beta", 2.0);
  const double gamma = number(cfg, "gamma", 0.0);
  const LsiOptions options = lsi_options(cfg);

  const LsiCertificate cert = lsi_check(e, psi, beta, gamma, options);
  json results;
  results["certificate"] = to_json(cert);
  certificate_verdict(rec, "lsi_certificate", cert);
  rec.table("lsi_samples.csv", samples_csv(cert));

  if (cfg.params.contains("witness")) {
    try {
      const State w(parse_element(cfg.params["witness"], m));
      const L2Vector xi = state_vector(w.normalized());
      const double d = lsi_deficiency(e, psi, beta, gamma, xi);
      results["witness_deficiency"] = d;
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(std::string("'witness' is not a state: ") + ex.what());
    }
  }

  if (cfg.params.value("best_constants", true)) {
    const BestConstants best = lsi_best_constants(e, psi, number(cfg, "best_gamma", gamma), options);
    json scan = json::array();
    std::string csv = "t,ratio\n";
    for (const auto& [t, ratio] : best.ratio_by_scale) {
      scan.push_back({{"t", t}, {"ratio", ratio}});
      csv += csv_number(t) + "," + csv_number(ratio) + "\n";
    }
    results["best_constants"] = {{"beta_star", best.beta_star},
                                 {"gamma", best.gamma},
                                 {"best_scale", best.best_scale},
                                 {"evaluations", best.evaluations},
                                 {"ratio_by_scale", scan}};
    rec.table("beta_scan.csv", csv);
  }
  r.document["results"] = results;
}

void run_ground_state(const RunConfig& cfg, RunResult& r, Recorder& rec) {
  const ModeSpace m(cfg.n);
  const EnergyForm e = form_of(cfg, m);
  const State psi = parse_state(cfg.params, "psi", m);
  const double beta = number(cfg, "beta", 2.0);
  const GroundStateReport report = ground_state(e, cfg.tolerance("cluster", 1e-8));

  LsiOptions options = lsi_options(cfg);
  json results;
  double gamma = 0.0;
  if (cfg.params.value("auto_measure", false)) {
    options.extra = report.positive_basis;
    const double measured = measure_gamma(e, psi, beta, options);
    gamma = measured - cfg.tolerance("gamma_margin", 1e-9);
    results["measured_gamma"] = measured;
  } else if (cfg.params.contains("gamma")) {
    gamma = number(cfg, "gamma", 0.0);
  } else {
    throw ConfigError("ground-state needs 'gamma' or 'auto_measure': true");
  }
  results["ground_state"] = to_json(report);

  const LsiCertificate cert = lsi_check(e, psi, beta, gamma, options);
  results["certificate"] = to_json(cert);
  certificate_verdict(rec, "lsi_certificate", cert);
  if (cert.valid) {
    const DegeneracyVerdict deg = degeneracy_bound_check(report, cert, psi, cfg.tolerance("degeneracy", 1e-9));
    results["degeneracy"] = to_json(deg);
    rec.verdict("degeneracy_bound", deg.verdict, deg.bound - deg.multiplicity);
    const NondegeneracyVerdict nd =
        nondegeneracy_criterion(e, report, cert, cfg.params.value("markov_samples", 200), options.seed);
    results["nondegeneracy"] = to_json(nd);
    rec.verdict("nondegeneracy_criterion", nd.verdict, std::log(2.0) - nd.exponent);
  }
  r.document["results"] = results;
}

void run_perturb(const RunConfig& cfg, RunResult& r, Recorder& rec) {
  const ModeSpace m(cfg.n);
  const EnergyForm e0 = form_of(cfg, m);
  const State psi0 = parse_state(cfg.params, "psi", m);
  const double beta = number(cfg, "beta", 2.0);
  const double gamma = number(cfg, "gamma", 0.0);
  if (!cfg.params.contains("h")) throw ConfigError("perturb needs an element spec 'h'");
  const CliffordElement h = parse_element(cfg.params["h"], m);
  if (!h.is_self_adjoint(1e-12)) throw ConfigError("'h' must be self-adjoint");
  const LsiOptions options = lsi_options(cfg);

  const LsiCertificate cert0 = lsi_check(e0, psi0, beta, gamma, options);
  json results;
  results["certificate"] = to_json(cert0);
  certificate_verdict(rec, "lsi_certificate", cert0);
  if (!cert0.valid) {
    r.document["results"] = results;
    return;
  }

  const PerturbationReport report =
      perturbed_lsi_and_stability(e0, psi0, cert0, h, options, cfg.tolerance("bounds", 1e-8));
  results["perturbation"] = to_json(report);
  double worst = report.bounds.empty() ? 0.0 : report.bounds.front().slack();
  std::string csv = "bound,lhs,rhs,slack\n";
  for (const auto& b : report.bounds) {
    worst = std::min(worst, b.slack());
    csv += b.name + "," + csv_number(b.lhs) + "," + csv_number(b.rhs) + "," + csv_number(b.slack()) + "\n";
  }
  rec.table("bounds.csv", csv);
  rec.verdict("stability_bounds", report.verdict, worst);

  VariationalOptions vo;
  vo.seed = sub_seed(options.seed, 1);
  const VariationalResult var = variational_c_beta(h, psi0, beta, vo);
  const double value_gap = std::abs(var.value - report.c_beta);
  const double distance = trace_distance(var.minimizer, report.gibbs);
  results["variational"] = {{"value", var.value},
                            {"c_beta", report.c_beta},
                            {"gap_bound", var.gap_bound},
                            {"iterations", var.iterations},
                            {"converged", var.converged},
                            {"trace_distance_to_gibbs", distance},
                            {"shifted_worst_slack", var.shifted_worst_slack}};
  const double value_tol = cfg.tolerance("variational_value", 1e-4);
  const double distance_tol = cfg.tolerance("variational_distance", 1e-3);
  rec.verdict("variational_value", value_gap <= value_tol, value_tol - value_gap);
  rec.verdict("variational_minimizer", distance <= distance_tol, distance_tol - distance);
  r.document["results"] = results;
}

void run_converge(const RunConfig& cfg, RunResult& r, Recorder& rec) {
  const std::string family = cfg.params.value("family", std::string("norm_to_zero"));
  const int count = cfg.params.value("count", 31);
  if (count < 1) throw ConfigError("'count' must be positive");
  std::vector<State> seq;
  std::optional<State> psi;
  if (family == "norm_to_zero") {
    const ModeSpace m(cfg.n);
    seq = norm_to_zero_family(m, count);
    psi = State::tracial(m);
  } else if (family == "constant") {
    const ModeSpace m(cfg.n);
    psi = parse_state(cfg.params, "psi", m);
    json phi_spec = cfg.params.value("phi", json{{"generator", "random_state"}, {"seed", cfg.require_seed()}});
    seq = constant_family(parse_state(json{{"phi", phi_spec}}, "phi", m), count);
  } else if (family == "escaping") {
    if (cfg.n != 4) throw ConfigError("the escaping-mass family uses n = 4");
    EscapingFamily f = escaping_mass_family();
    seq = std::move(f.members);
    psi = f.psi;
  } else {
    throw ConfigError("unknown family '" + family + "'");
  }

  std::vector<double> k_grid = default_k_grid();
  if (cfg.params.contains("k_grid")) {
    try {
      k_grid = cfg.params["k_grid"].get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ConfigError("'k_grid' must be an array of numbers");
    }
    if (k_grid.empty()) throw ConfigError("'k_grid' must not be empty");
    for (double k : k_grid) {
      if (!(k > 0.0)) throw ConfigError("'k_grid' entries must be positive");
    }
  }
  const double tol = cfg.tolerance("classification", 1e-8);

  const ConvergenceReport conv = convergence_theorems(seq, *psi, k_grid, tol);
  const IntegrabilityReport ui = uniform_integrability(seq, *psi, k_grid, tol);
  const VanishingReport van = relative_vanishing(seq, *psi, k_grid, tol);

  json results;
  results["family"] = family;
  results["members"] = seq.size();
  results["classification"] = {{"norm_to_zero", conv.norm_to_zero},
                               {"vanishing", conv.vanishing},
                               {"uniformly_integrable", conv.uniformly_integrable},
                               {"overlap_to_zero", conv.overlap_to_zero}};
  results["sup_entropy"] = ui.sup_entropy;
  results["entropy_tail_worst_excess"] = ui.entropy_tail_worst_excess;
  results["corrected_tail_worst_excess"] = ui.corrected_tail_worst_excess;
  results["chebyshev_worst_slack"] = van.chebyshev_worst_slack;
  json eps = json::array();
  for (const auto& row : conv.epsilon_table) {
    eps.push_back({{"epsilon", row.epsilon},
                   {"k_epsilon", std::isnan(row.k_epsilon) ? json(nullptr) : json(row.k_epsilon)}});
  }
  results["epsilon_table"] = eps;
  r.document["results"] = results;

  rec.verdict("equivalence_consistent", conv.equivalence_consistent, 0.0);
  rec.verdict("overlap_criterion_consistent", conv.overlap_criterion_consistent, 0.0);
  rec.verdict("bookkeeping", conv.bookkeeping_holds, 0.0);
  rec.verdict("chebyshev_tail", van.chebyshev_worst_slack >= -1e-12, van.chebyshev_worst_slack);
  rec.verdict("corrected_tail_bound", ui.corrected_tail_worst_excess <= 1e-12, -ui.corrected_tail_worst_excess);
  if (cfg.params.contains("expect")) {
    for (const auto& [axis, want] : cfg.params["expect"].items()) {
      if (!results["classification"].contains(axis)) throw ConfigError("unknown classification axis '" + axis + "'");
      const bool got = results["classification"][axis].get<bool>();
      rec.verdict("expect_" + axis, got == want.get<bool>(), 0.0,
                  "classified " + std::string(got ? "true" : "false"));
    }
  }

  rec.table("diagnostics.csv", conv.diagnostics.to_csv());
  std::string book = "member,k,norm,tail_self,head_self,vanishing_bound,overlap_bound\n";
  for (const auto& row : conv.table) {
    book += std::to_string(row.member) + "," + csv_number(row.k) + "," + csv_number(row.norm) + "," +
            csv_number(row.tail_self) + "," + csv_number(row.head_self) + "," + csv_number(row.vanishing_bound) + "," +
            csv_number(row.overlap_bound) + "\n";
  }
  rec.table("bookkeeping.csv", book);
  std::string eps_csv = "epsilon,k_epsilon,final_vanishing_bound,final_overlap_bound\n";
  for (const auto& row : conv.epsilon_table) {
    eps_csv += csv_number(row.epsilon) + "," + (std::isnan(row.k_epsilon) ? "" : csv_number(row.k_epsilon)) + "," +
               csv_number(row.final_vanishing_bound) + "," + csv_number(row.final_overlap_bound) + "\n";
  }
  rec.table("epsilon.csv", eps_csv);
}

void run_physical(const RunConfig& cfg, RunResult& r, Recorder& rec) {
  const ModeSpace m(cfg.n);
  if (!cfg.params.contains("A")) throw ConfigError("physical needs a one-particle matrix 'A'");
  if (!cfg.params.contains("alpha")) throw ConfigError("physical needs an element spec 'alpha'");
  const Mat a = parse_matrix(cfg.params["A"], m.modes(), m.modes());
  const CliffordElement alpha = parse_element(cfg.params["alpha"], m);
  std::optional<OneParticleOperator> op;
  try {
    op.emplace(a);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'A' is not admissible: ") + e.what());
  }
  if (!alpha.is_self_adjoint(1e-12)) throw ConfigError("'alpha' must be self-adjoint");
  if (op->mu() <= 0.0) throw ConfigError("'A' must be strictly positive");

  const PhysicalReport report = physical_hamiltonian(*op, alpha, lsi_options(cfg));
  r.document["results"] = to_json(report);
  rec.verdict("domination", report.domination_min_eigenvalue >= -1e-10, report.domination_min_eigenvalue);
  certificate_verdict(rec, "free_certificate", report.free_certificate);
  rec.verdict("unique_ground_state", report.ground.multiplicity == 1, 1.0 - report.ground.multiplicity);
  rec.verdict("strictly_positive", report.ground.strictly_positive, report.ground.ground_min_eigenvalue - 1e-8);
  rec.verdict("pipeline", report.verdict, 0.0);
}

}  // namespace

json RunResult::failure_json() const {
  json list = json::array();
  for (const auto& f : failures) list.push_back({{"verdict", f.verdict}, {"detail", f.detail}});
  return {{"command", document.value("command", "")}, {"failures", list}};
}

RunResult run(const RunConfig& cfg) {
  RunResult r;
  r.document["schema_version"] = kSchemaVersion;
  r.document["tool_version"] = kToolVersion;
  r.document["command"] = cfg.command;
  r.document["config"] = cfg.params;
  Recorder rec(r);
  if (cfg.command == "car-check") {
    run_car_check(cfg, r, rec);
  } else if (cfg.command == "lsi-scan") {
    run_lsi_scan(cfg, r, rec);
  } else if (cfg.command == "ground-state") {
    run_ground_state(cfg, r, rec);
  } else if (cfg.command == "perturb") {
    run_perturb(cfg, r, rec);
  } else if (cfg.command == "converge") {
    run_converge(cfg, r, rec);
  } else if (cfg.command == "physical") {
    run_physical(cfg, r, rec);
  } else {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  json tables = json::array();
  for (const auto& [name, csv] : r.tables) tables.push_back(name);
  r.document["tables"] = tables;
  r.document["passed"] = r.passed();
  r.document["failures"] = r.failure_json()["failures"];
  return r;
}

void write_outputs(const RunResult& result, const std::filesystem::path& out, double wall_time_seconds) {
  std::filesystem::create_directories(out);
  json doc = result.document;
  doc["wall_time_seconds"] = wall_time_seconds;
  std::ofstream f(out / "result.json");
  if (!f) throw std::runtime_error("cannot write " + (out / "result.json").string());
  f << doc.dump(2) << "\n";
  for (const auto& [name, csv] : result.tables) {
    std::ofstream t(out / name);
    if (!t) throw std::runtime_error("cannot write " + (out / name).string());
    t << csv;
  }
}

}  // namespace clsi::cli
