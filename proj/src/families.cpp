#include "clsi/families.hpp"

#include <cmath>
#include <stdexcept>

namespace clsi {

std::vector<State> norm_to_zero_family(const ModeSpace& m, int count) {
  if (count < 1) throw std::invalid_argument("family size must be positive");
  std::vector<State> out;
  const State tau = State::tracial(m);
  for (int j = 0; j < count; ++j) out.push_back(tau.scaled(std::ldexp(1.0, -j)));
  return out;
}

std::vector<State> constant_family(const State& phi, int count) {
  if (count < 1) throw std::invalid_argument("family size must be positive");
  return std::vector<State>(static_cast<std::size_t>(count), phi);
}

namespace {

// Small enough that 2/√q exceeds 2^20, and the only small eigenvalue of ρ_ψ,
// so its eigenvectors do not mix with a nearby cluster.
constexpr double kTinyWeight = 1e-12;

}  // namespace

EscapingFamily escaping_mass_family() {
  const ModeSpace m(4);
  const CliffordElement one = CliffordElement::identity(m);
  const cplx i(0.0, 1.0);
  const CliffordElement u = i * (CliffordElement::generator(1, m) * CliffordElement::generator(2, m));
  const CliffordElement v = i * (CliffordElement::generator(3, m) * CliffordElement::generator(4, m));

  std::vector<CliffordElement> projections;
  for (double a : {1.0, -1.0}) {
    for (double b : {1.0, -1.0}) {
      projections.push_back(0.25 * ((one + a * u) * (one + b * v)));
    }
  }
  const double q[4] = {2.4, 1.2, 0.4 - kTinyWeight, kTinyWeight};
  CliffordElement rho = CliffordElement::zero(m);
  for (int j = 0; j < 4; ++j) rho += q[j] * projections[static_cast<std::size_t>(j)];

  EscapingFamily out{State(rho), {}};
  for (const CliffordElement& p : projections) out.members.emplace_back(4.0 * p);
  return out;
}

}  // namespace clsi
