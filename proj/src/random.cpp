#include "clsi/random.hpp"

#include <cmath>
#include <numbers>

namespace clsi {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) * std::numbers::sqrt2 * 0.5;
}

Vec Rng::complex_vector(Eigen::Index size) {
  Vec v(size);
  for (Eigen::Index k = 0; k < size; ++k) v(k) = complex_normal();
  return v;
}

RealVec Rng::real_vector(Eigen::Index size) {
  RealVec v(size);
  for (Eigen::Index k = 0; k < size; ++k) v(k) = normal();
  return v;
}

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master ^ (index * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace clsi
