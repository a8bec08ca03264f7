#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clsi/fock.hpp"
#include "clsi/report.hpp"
#include "clsi/standard_form.hpp"
#include "clsi/state.hpp"

namespace clsi {

/// Quadratic form E[ξ] = (ξ|Hξ) of a self-adjoint operator H on L²(M,τ).
class EnergyForm {
 public:
  EnergyForm(const ModeSpace& m, Mat hamiltonian, std::string label = "custom");
  static EnergyForm from_operator(const FockOperator& op, std::string label);

  const ModeSpace& space() const noexcept { return space_; }
  const Mat& hamiltonian() const noexcept { return h_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  const std::string& label() const noexcept { return label_; }
  double lambda0() const { return spectrum_.min(); }

  double value(const L2Vector& xi) const;
  /// ‖√(H - λ₀)ξ‖² + λ₀‖ξ‖², the spectral route to the same value.
  double value_spectral(const L2Vector& xi) const;

  /// T_t = e^{-tH}; throws for t < 0.
  Mat semigroup(double t) const;
  L2Vector evolve(const L2Vector& xi, double t) const;

  EnergyForm shifted(double c) const;
  EnergyForm scaled(double c) const;

 private:
  ModeSpace space_;
  Mat h_;
  Spectrum spectrum_;
  std::string label_;
};

double form_value(const EnergyForm& e, const L2Vector& xi);
Mat semigroup(const EnergyForm& e, double t);

/// ‖HJ - JH‖ as matrices (J antilinear).
double real_defect(const EnergyForm& e);
bool check_real(const EnergyForm& e, double tol = 1e-11);

/// {0.1, 0.5, 1, 2}
std::vector<double> default_t_grid();

/// Cone vectors used by every sampled positivity check: ξ_τ, the projections
/// (1 ± e_i)/2 and unit cone vectors from Ginibre densities.
std::vector<L2Vector> cone_samples(const ModeSpace& m, std::size_t samples, std::uint64_t seed);

/// min over t and samples of the relative min eigenvalue of a_{T_tξ}, with
/// any non-self-adjoint part counted as a violation. A sampled certificate.
PropertyReport check_positivity_preserving(const EnergyForm& e, const std::vector<double>& t_grid,
                                           std::size_t samples, std::uint64_t seed, double tol = 1e-10);

/// E[ξ] - E[|ξ|] over random real ξ and cone vectors; E must be real.
PropertyReport check_beurling_deny(const EnergyForm& e, std::size_t samples, std::uint64_t seed, double tol = 1e-9);

struct MarkovReport {
  PropertyReport form;          // E[ξ] - E[ξ ∧ ξ_ψ]
  PropertyReport order;         // min eig of ξ_ψ - T_tξ for real ξ ≤ ξ_ψ
  PropertyReport contraction;   // ‖ξ‖ - ‖T_tξ‖
  PropertyReport positivity;    // T_t maps the cone into itself
  bool verdict = false;
};

MarkovReport check_markovian(const EnergyForm& e, const State& psi, const std::vector<double>& t_grid,
                             std::size_t samples, std::uint64_t seed, double tol = 1e-9);

/// ∂ = ⊕ a_i : L² → K = ⊕_{i=1}^n L².
struct DerivationStack {
  std::vector<Mat> components;

  std::vector<Vec> apply(const L2Vector& xi) const;
  /// ‖∂ξ‖²_K = Σ ‖a_iξ‖².
  double norm_squared(const L2Vector& xi) const;
};

struct CliffordDirichlet {
  EnergyForm form;  // H = N
  DerivationStack derivation;
};

CliffordDirichlet clifford_dirichlet_form(const ModeSpace& m);

/// a_i(xyξ_τ) = (a_i(xξ_τ))·y + α(x)·(a_i(yξ_τ)) on random x, y and all i;
/// margin is minus the largest deviation.
PropertyReport check_leibniz(const ModeSpace& m, std::size_t samples, std::uint64_t seed, double tol = 1e-11);

/// c·S with S the parity: real, but it rotates e_iξ_τ against ξ_τ and breaks
/// both positivity preservation and the Beurling–Deny property.
EnergyForm parity_flip_form(const ModeSpace& m, double c);

}  // namespace clsi
