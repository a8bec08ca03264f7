#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

namespace clsi {

/// Outcome of a sampled property check. `worst_margin` is the smallest slack
/// observed (right side minus left side of the tested inequality, or minus the
/// deviation for identities); negative values are violations.
struct PropertyReport {
  std::string property;
  std::size_t samples = 0;
  double worst_margin = 0.0;
  bool verdict = false;
};

nlohmann::json to_json(const PropertyReport& r);

}  // namespace clsi
