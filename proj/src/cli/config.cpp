#include "clsi/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "clsi/lsi.hpp"
#include "clsi/random.hpp"
#include "clsi/sampling.hpp"

namespace clsi::cli {

namespace {

bool is_randomized(const std::string& command) { return command != "car-check"; }

// JSON documents parsed from text mark nonnegative integers as unsigned, while
// ones built in code are signed; both are accepted.
bool is_count(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

cplx parse_scalar(const nlohmann::json& v) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return cplx(v[0].get<double>(), v[1].get<double>());
  }
  throw ConfigError("expected a number or a [re, im] pair, got " + v.dump());
}

Monomial parse_modes(const std::string& key, const ModeSpace& m) {
  std::istringstream in(key);
  Monomial s = 0;
  int previous = 0;
  std::string token;
  while (in >> token) {
    int mode = 0;
    try {
      std::size_t used = 0;
      mode = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ConfigError("monomial key '" + key + "' must list mode indices separated by spaces");
    }
    if (mode < 1 || mode > m.modes()) throw ConfigError("monomial key '" + key + "' names a mode outside 1..n");
    if (mode <= previous) throw ConfigError("monomial key '" + key + "' must list modes in increasing order");
    previous = mode;
    s |= m.mode_mask(mode);
  }
  return s;
}

}  // namespace

double RunConfig::tolerance(const std::string& key, double fallback) const {
  auto it = tolerances.find(key);
  return it == tolerances.end() ? fallback : it->second;
}

std::uint64_t RunConfig::require_seed() const {
  if (!seed) throw ConfigError("command '" + command + "' is randomized and needs a seed");
  return *seed;
}

RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig cfg;
  cfg.params = doc;
  if (!doc.contains("command") || !doc["command"].is_string()) throw ConfigError("configuration needs a 'command'");
  cfg.command = doc["command"].get<std::string>();
  bool known = false;
  for (const char* c : kCommands) known = known || cfg.command == c;
  if (!known) throw ConfigError("unknown command '" + cfg.command + "'");

  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ConfigError("configuration needs an integer 'n'");
  cfg.n = doc["n"].get<int>();
  if (cfg.n < 1 || cfg.n > kMaxModes) {
    throw ConfigError("n = " + std::to_string(cfg.n) + " outside 1.." + std::to_string(kMaxModes));
  }
  if (doc.contains("seed")) {
    if (!is_count(doc["seed"])) throw ConfigError("'seed' must be an unsigned 64-bit integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("samples")) {
    if (!is_count(doc["samples"])) throw ConfigError("'samples' must be a nonnegative integer");
    cfg.samples = doc["samples"].get<std::size_t>();
  }
  if (doc.contains("tolerances")) {
    if (!doc["tolerances"].is_object()) throw ConfigError("'tolerances' must be an object");
    for (const auto& [k, v] : doc["tolerances"].items()) {
      if (!v.is_number()) throw ConfigError("tolerance '" + k + "' must be a number");
      cfg.tolerances[k] = v.get<double>();
    }
  }
  if (is_randomized(cfg.command) && !cfg.seed) {
    throw ConfigError("command '" + cfg.command + "' is randomized and needs a seed");
  }
  return cfg;
}

CliffordElement parse_element(const nlohmann::json& spec, const ModeSpace& m) {
  if (!spec.is_object()) throw ConfigError("element spec must be an object");
  if (spec.contains("monomials")) {
    if (!spec["monomials"].is_object()) throw ConfigError("'monomials' must map mode lists to coefficients");
    CliffordElement a = CliffordElement::zero(m);
    for (const auto& [key, value] : spec["monomials"].items()) {
      a += parse_scalar(value) * CliffordElement::monomial(parse_modes(key, m), m);
    }
    return a;
  }
  if (spec.contains("generator")) {
    const std::string gen = spec["generator"].get<std::string>();
    if (gen != "random_selfadjoint") throw ConfigError("unknown element generator '" + gen + "'");
    if (!spec.contains("seed") || !is_count(spec["seed"])) {
      throw ConfigError("element generator needs an unsigned 'seed'");
    }
    Rng rng(spec["seed"].get<std::uint64_t>());
    CliffordElement a = random_selfadjoint(m, rng);
    if (spec.contains("norm")) a *= spec["norm"].get<double>() / a.norm();
    if (spec.contains("scale")) a *= spec["scale"].get<double>();
    return a;
  }
  throw ConfigError("element spec needs 'monomials' or 'generator'");
}

Mat parse_matrix(const nlohmann::json& spec, Eigen::Index rows, Eigen::Index cols) {
  if (spec.is_string()) {
    if (spec.get<std::string>() == "identity") return Mat::Identity(rows, cols);
    throw ConfigError("unknown matrix keyword '" + spec.get<std::string>() + "'");
  }
  if (spec.is_array()) {
    if (static_cast<Eigen::Index>(spec.size()) != rows) throw ConfigError("matrix has the wrong number of rows");
    Mat out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = spec[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        throw ConfigError("matrix row " + std::to_string(r) + " has the wrong length");
      }
      for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = parse_scalar(row[static_cast<std::size_t>(c)]);
    }
    return out;
  }
  if (spec.is_object() && spec.contains("file")) {
    std::ifstream in(spec["file"].get<std::string>());
    if (!in) throw ConfigError("cannot open matrix file '" + spec["file"].get<std::string>() + "'");
    nlohmann::json inner;
    try {
      in >> inner;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("matrix file is not valid JSON: ") + e.what());
    }
    return parse_matrix(inner, rows, cols);
  }
  if (spec.is_object() && spec.value("generator", "") == "random_spd") {
    if (!spec.contains("seed") || !is_count(spec["seed"])) {
      throw ConfigError("random_spd generator needs an unsigned 'seed'");
    }
    const double mu = spec.value("mu", 1.0);
    Rng rng(spec["seed"].get<std::uint64_t>());
    // μI + BB^T with B of shape rows × (rows - 1): the smallest eigenvalue is exactly μ.
    RealMat b(rows, std::max<Eigen::Index>(rows - 1, 0));
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      for (Eigen::Index c = 0; c < b.cols(); ++c) b(r, c) = rng.normal();
    }
    RealMat a = mu * RealMat::Identity(rows, rows) + b * b.transpose();
    return a.cast<cplx>();
  }
  throw ConfigError("matrix spec must be a dense array, \"identity\", a file or a generator");
}

EnergyForm parse_form(const nlohmann::json& spec, const ModeSpace& m) {
  if (!spec.is_object() || !spec.contains("type")) throw ConfigError("form spec needs a 'type'");
  const std::string type = spec["type"].get<std::string>();
  std::optional<EnergyForm> form;
  try {
    if (type == "number") {
      form = clifford_dirichlet_form(m).form;
    } else if (type == "dgamma") {
      if (!spec.contains("A")) throw ConfigError("dgamma form needs a one-particle matrix 'A'");
      const Mat a = parse_matrix(spec["A"], m.modes(), m.modes());
      form = EnergyForm::from_operator(second_quantize(a, m), "dGamma");
    } else if (type == "custom") {
      if (!spec.contains("H")) throw ConfigError("custom form needs an operator 'H'");
      const auto dim = static_cast<Eigen::Index>(m.dim());
      form = EnergyForm(m, parse_matrix(spec["H"], dim, dim), "custom");
    } else if (type == "degenerate") {
      if (m.modes() != 2) throw ConfigError("the degenerate construction uses n = 2");
      form = degenerate_form();
    } else {
      throw ConfigError("unknown form type '" + type + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("malformed form spec: ") + e.what());
  }
  if (spec.contains("scale")) form = form->scaled(spec["scale"].get<double>());
  if (spec.contains("shift")) form = form->shifted(spec["shift"].get<double>());
  return *form;
}

}  // namespace clsi::cli
