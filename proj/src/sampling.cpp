#include "clsi/sampling.hpp"

#include <stdexcept>

namespace clsi {

CliffordElement random_element(const ModeSpace& m, Rng& rng) {
  return CliffordElement(m, rng.complex_vector(static_cast<Eigen::Index>(m.dim())));
}

CliffordElement random_selfadjoint(const ModeSpace& m, Rng& rng) {
  Vec c(static_cast<Eigen::Index>(m.dim()));
  for (Monomial s = 0; s < m.dim(); ++s) {
    const double x = rng.normal();
    c(static_cast<Eigen::Index>(s)) = adjoint_sign(s) == 1 ? cplx(x, 0.0) : cplx(0.0, x);
  }
  return CliffordElement(m, c);
}

State random_state(const ModeSpace& m, Rng& rng) {
  const CliffordElement g = random_element(m, rng);
  const CliffordElement rho = g * g.adjoint();
  return State((1.0 / trace(rho).real()) * rho);
}

State random_low_rank_state(const ModeSpace& m, int rank, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  if (rank < 1 || rank > dim) throw std::invalid_argument("requested rank outside 1..2^n");
  // Compress a Ginibre density onto a random spectral subspace of a random
  // self-adjoint element, which stays inside M.
  const Spectrum sp = spectrum(random_selfadjoint(m, rng));
  // Spectral clusters of elements of M are degenerate in the Fock
  // representation, so the cut is moved up to the end of a cluster.
  Eigen::Index r = rank;
  while (r < dim && sp.values(r) - sp.values(r - 1) < 1e-9) ++r;
  const double cut = sp.values(r - 1);
  const CliffordElement p(m, sp.apply_to([cut](double s) { return s <= cut ? 1.0 : 0.0; }, vacuum(m)));
  const CliffordElement g = random_element(m, rng);
  const CliffordElement rho = p * g * g.adjoint() * p;
  return State((1.0 / trace(rho).real()) * rho);
}

L2Vector random_real_vector(const ModeSpace& m, Rng& rng) { return L2Vector(random_selfadjoint(m, rng)); }

L2Vector random_unit_cone_vector(const ModeSpace& m, Rng& rng) {
  const L2Vector xi = state_vector(random_state(m, rng));
  return (1.0 / xi.norm()) * xi;
}

}  // namespace clsi
