#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "clsi/clifford.hpp"
#include "clsi/energy_forms.hpp"
#include "clsi/perturbation.hpp"

namespace clsi::cli {

/// Malformed or out-of-range configuration; the CLI exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int n = 0;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 0;  // 0 selects the command default
  std::map<std::string, double> tolerances;
  nlohmann::json params;  // the full document, for command-specific keys

  double tolerance(const std::string& key, double fallback) const;
  std::uint64_t require_seed() const;
};

inline const char* kCommands[] = {"car-check", "lsi-scan", "ground-state", "perturb", "converge", "physical"};

RunConfig parse_config(const nlohmann::json& doc);

/// {"monomials": {"": 1, "1 2": [re, im]}} or
/// {"generator": "random_selfadjoint", "seed": s, "norm": r}.
CliffordElement parse_element(const nlohmann::json& spec, const ModeSpace& m);

/// Dense matrix (rows of numbers or [re, im] pairs), "identity", or
/// {"generator": "random_spd", "mu": μ, "seed": s}.
Mat parse_matrix(const nlohmann::json& spec, Eigen::Index rows, Eigen::Index cols);

/// {"type": "number" | "dgamma" | "custom" | "degenerate", "scale", "shift", ...}.
EnergyForm parse_form(const nlohmann::json& spec, const ModeSpace& m);

}  // namespace clsi::cli
