#pragma once

#include <cstdint>
#include <random>

#include "clsi/linalg.hpp"

namespace clsi {

/// Seedable generator with a portable normal sampler.
///
/// std::normal_distribution is implementation-defined, so normals are drawn by
/// Box–Muller from the raw 64-bit stream; results are identical across
/// standard libraries for the same seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Standard complex Gaussian, E|z|^2 = 1.
  cplx complex_normal();

  Vec complex_vector(Eigen::Index size);
  RealVec real_vector(Eigen::Index size);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Per-sample seed derived from a master seed and a counter (splitmix64).
std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index);

}  // namespace clsi
