#pragma once

#include <cstdint>
#include <vector>

#include "clsi/mode_space.hpp"
#include "clsi/report.hpp"

namespace clsi {

/// Deviations of the algebraic identities at n modes. Each entry is a
/// PropertyReport whose worst_margin is minus the largest deviation.
struct IdentitySuite {
  ModeSpace space{1};
  std::vector<PropertyReport> checks;
  double max_deviation() const;
  bool passed(double tol = 1e-12) const { return max_deviation() <= tol; }
};

nlohmann::json to_json(const IdentitySuite& s);

/// CAR relations, field anticommutators for real vectors, traciality of τ,
/// and unitarity of the duality transform checked against products of field
/// operators applied to Ω.
IdentitySuite identity_suite(const ModeSpace& m, std::size_t samples, std::uint64_t seed, double tol = 1e-12);

}  // namespace clsi
