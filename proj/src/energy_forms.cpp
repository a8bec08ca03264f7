#include "clsi/energy_forms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "clsi/random.hpp"
#include "clsi/sampling.hpp"

namespace clsi {

namespace {

/// Relative positivity margin of a_ξ: min eigenvalue of its Hermitian part
/// minus the size of its anti-Hermitian part, both divided by ‖a_ξ‖.
double positivity_margin(const L2Vector& xi) {
  const Mat a = xi.algebra().matrix();
  const Spectrum sp = hermitian_spectrum(a);
  const double scale = std::max(sp.norm(), 1e-300);
  const double skew = max_abs(Mat((a - a.adjoint()) * 0.5));
  return (sp.min() - skew) / scale;
}

/// J as the diagonal of adjoint signs: Jξ = Σ conj(ξ).
RealVec adjoint_signs(const ModeSpace& m) {
  RealVec s(static_cast<Eigen::Index>(m.dim()));
  for (Monomial k = 0; k < m.dim(); ++k) s(static_cast<Eigen::Index>(k)) = adjoint_sign(k);
  return s;
}

}  // namespace

EnergyForm::EnergyForm(const ModeSpace& m, Mat hamiltonian, std::string label)
    : space_(m), h_(std::move(hamiltonian)), label_(std::move(label)) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  if (h_.rows() != dim || h_.cols() != dim) throw std::invalid_argument("energy operator has wrong dimension");
  if (hermitian_defect(h_) > 1e-10 * std::max(1.0, max_abs(h_))) {
    throw std::invalid_argument("energy operator is not self-adjoint");
  }
  h_ = (h_ + h_.adjoint()) * 0.5;
  spectrum_ = hermitian_spectrum(h_);
}

EnergyForm EnergyForm::from_operator(const FockOperator& op, std::string label) {
  return EnergyForm(op.space, op.dense(), std::move(label));
}

double EnergyForm::value(const L2Vector& xi) const { return xi.fock().dot(h_ * xi.fock()).real(); }

double EnergyForm::value_spectral(const L2Vector& xi) const {
  const double l0 = lambda0();
  const Vec root = spectrum_.apply_to([l0](double s) { return std::sqrt(std::max(s - l0, 0.0)); }, xi.fock());
  return root.squaredNorm() + l0 * xi.fock().squaredNorm();
}

Mat EnergyForm::semigroup(double t) const {
  if (t < 0.0) throw std::invalid_argument("semigroup time must be nonnegative");
  return spectrum_.apply([t](double s) { return std::exp(-t * s); });
}

L2Vector EnergyForm::evolve(const L2Vector& xi, double t) const {
  if (t < 0.0) throw std::invalid_argument("semigroup time must be nonnegative");
  return L2Vector(space_, spectrum_.apply_to([t](double s) { return std::exp(-t * s); }, xi.fock()));
}

EnergyForm EnergyForm::shifted(double c) const {
  return EnergyForm(space_, h_ + c * Mat::Identity(h_.rows(), h_.cols()), label_ + "+shift");
}

EnergyForm EnergyForm::scaled(double c) const { return EnergyForm(space_, c * h_, label_ + "*scale"); }

double form_value(const EnergyForm& e, const L2Vector& xi) { return e.value(xi); }

Mat semigroup(const EnergyForm& e, double t) { return e.semigroup(t); }

double real_defect(const EnergyForm& e) {
  // HJξ = JHξ for all ξ  ⇔  H Σ = Σ conj(H).
  const RealVec s = adjoint_signs(e.space());
  const Mat& h = e.hamiltonian();
  return max_abs(Mat(h * s.asDiagonal() - s.asDiagonal() * h.conjugate()));
}

bool check_real(const EnergyForm& e, double tol) {
  return real_defect(e) <= tol * std::max(1.0, max_abs(e.hamiltonian()));
}

std::vector<double> default_t_grid() { return {0.1, 0.5, 1.0, 2.0}; }

std::vector<L2Vector> cone_samples(const ModeSpace& m, std::size_t samples, std::uint64_t seed) {
  std::vector<L2Vector> out;
  const CliffordElement one = CliffordElement::identity(m);
  out.push_back(trace_vector(m));
  for (int i = 1; i <= m.modes(); ++i) {
    const CliffordElement e = CliffordElement::generator(i, m);
    out.emplace_back(0.5 * (one + e));
    out.emplace_back(0.5 * (one - e));
  }
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(sub_seed(seed, k));
    out.push_back(random_unit_cone_vector(m, rng));
  }
  return out;
}

PropertyReport check_positivity_preserving(const EnergyForm& e, const std::vector<double>& t_grid,
                                           std::size_t samples, std::uint64_t seed, double tol) {
  PropertyReport rep{"positivity_preserving", 0, std::numeric_limits<double>::infinity(), false};
  for (const L2Vector& xi : cone_samples(e.space(), samples, seed)) {
    for (double t : t_grid) {
      rep.worst_margin = std::min(rep.worst_margin, positivity_margin(e.evolve(xi, t)));
      ++rep.samples;
    }
  }
  rep.verdict = rep.worst_margin >= -tol;
  return rep;
}

PropertyReport check_beurling_deny(const EnergyForm& e, std::size_t samples, std::uint64_t seed, double tol) {
  if (!check_real(e)) throw std::invalid_argument("Beurling-Deny check requires a real energy form");
  PropertyReport rep{"beurling_deny", 0, std::numeric_limits<double>::infinity(), false};
  const double scale = std::max(1.0, e.spectrum().norm());
  auto test = [&](const L2Vector& xi) {
    const double margin = (e.value(xi) - e.value(modulus(xi))) / (scale * std::max(xi.fock().squaredNorm(), 1e-300));
    rep.worst_margin = std::min(rep.worst_margin, margin);
    ++rep.samples;
  };
  for (const L2Vector& xi : cone_samples(e.space(), 0, seed)) test(xi);
  for (int i = 1; i <= e.space().modes(); ++i) test(L2Vector(CliffordElement::generator(i, e.space())));
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(sub_seed(seed, k));
    test(random_real_vector(e.space(), rng));
  }
  rep.verdict = rep.worst_margin >= -tol;
  return rep;
}

MarkovReport check_markovian(const EnergyForm& e, const State& psi, const std::vector<double>& t_grid,
                             std::size_t samples, std::uint64_t seed, double tol) {
  if (!check_real(e)) throw std::invalid_argument("Markovianity check requires a real energy form");
  const ModeSpace& m = e.space();
  const L2Vector xi_psi = state_vector(psi);
  const double inf = std::numeric_limits<double>::infinity();
  MarkovReport rep;
  rep.form = {"markov_form", 0, inf, false};
  rep.order = {"markov_order_interval", 0, inf, false};
  rep.contraction = {"contraction", 0, inf, false};
  const double scale = std::max(1.0, e.spectrum().norm());

  auto form_test = [&](const L2Vector& xi) {
    const double margin =
        (e.value(xi) - e.value(wedge(xi, xi_psi))) / (scale * std::max(xi.fock().squaredNorm(), 1e-300));
    rep.form.worst_margin = std::min(rep.form.worst_margin, margin);
    ++rep.form.samples;
  };
  auto order_test = [&](const L2Vector& xi) {
    const double nrm = std::max(xi.norm(), xi_psi.norm());
    for (double t : t_grid) {
      const L2Vector moved = e.evolve(xi, t);
      rep.order.worst_margin = std::min(rep.order.worst_margin, positivity_margin(xi_psi - moved) *
                                                                    (xi_psi - moved).algebra().norm() / nrm);
      rep.contraction.worst_margin = std::min(rep.contraction.worst_margin, (xi.norm() - moved.norm()) / nrm);
      ++rep.order.samples;
      ++rep.contraction.samples;
    }
  };

  form_test(xi_psi);
  order_test(xi_psi);
  for (int i = 1; i <= m.modes(); ++i) form_test(L2Vector(CliffordElement::generator(i, m)));
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(sub_seed(seed, k));
    const L2Vector real = random_real_vector(m, rng);
    form_test(real);
    form_test((1.0 / real.norm()) * real + xi_psi);
    // ξ ≤ ξ_ψ: subtract a random cone vector of random size from ξ_ψ.
    const L2Vector below = xi_psi - (rng.uniform(0.0, 3.0) * xi_psi.norm()) * random_unit_cone_vector(m, rng);
    order_test(below);
  }
  rep.positivity = check_positivity_preserving(e, t_grid, samples, sub_seed(seed, 0xC0FFEE), tol);
  rep.form.verdict = rep.form.worst_margin >= -tol;
  rep.order.verdict = rep.order.worst_margin >= -tol;
  rep.contraction.verdict = rep.contraction.worst_margin >= -tol;
  rep.verdict = rep.form.verdict && rep.order.verdict && rep.contraction.verdict && rep.positivity.verdict;
  return rep;
}

std::vector<Vec> DerivationStack::apply(const L2Vector& xi) const {
  std::vector<Vec> out;
  for (const Mat& a : components) out.push_back(a * xi.fock());
  return out;
}

double DerivationStack::norm_squared(const L2Vector& xi) const {
  double s = 0.0;
  for (const Vec& v : apply(xi)) s += v.squaredNorm();
  return s;
}

CliffordDirichlet clifford_dirichlet_form(const ModeSpace& m) {
  DerivationStack stack;
  for (int i = 1; i <= m.modes(); ++i) stack.components.push_back(annihilator(i, m).dense());
  return CliffordDirichlet{EnergyForm::from_operator(number_operator(m), "number"), std::move(stack)};
}

PropertyReport check_leibniz(const ModeSpace& m, std::size_t samples, std::uint64_t seed, double tol) {
  PropertyReport rep{"leibniz", 0, 0.0, false};
  const L2Vector xi_tau = trace_vector(m);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(sub_seed(seed, k));
    const CliffordElement x = random_element(m, rng);
    const CliffordElement y = random_element(m, rng);
    const double scale = x.coeffs().norm() * y.coeffs().norm();
    for (int i = 1; i <= m.modes(); ++i) {
      const FockOperator a = annihilator(i, m);
      const L2Vector lhs(m, a.matrix * left_action(x * y, xi_tau).fock());
      const L2Vector ax(m, a.matrix * left_action(x, xi_tau).fock());
      const L2Vector ay(m, a.matrix * left_action(y, xi_tau).fock());
      const L2Vector rhs = right_action(y, ax) + left_action(parity_automorphism(x), ay);
      worst = std::max(worst, (lhs - rhs).norm() / std::max(scale, 1e-300));
      ++rep.samples;
    }
  }
  rep.worst_margin = -worst;
  rep.verdict = worst <= tol;
  return rep;
}

EnergyForm parity_flip_form(const ModeSpace& m, double c) {
  return EnergyForm(m, c * parity(m).dense(), "parity-flip");
}

}  // namespace clsi
