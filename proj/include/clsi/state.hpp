#pragma once

#include "clsi/clifford.hpp"

namespace clsi {

/// A positive normal functional φ(x) = τ(ρx) with density ρ ∈ M₊.
class State {
 public:
  /// Throws std::invalid_argument if ρ is not self-adjoint and positive
  /// semidefinite (min eigenvalue below -tol·‖ρ‖).
  explicit State(CliffordElement rho, double tol = 1e-10);
  /// The trace state on one mode, as a placeholder value.
  State() : State(CliffordElement::identity(ModeSpace(1))) {}

  static State tracial(const ModeSpace& m);

  const ModeSpace& space() const noexcept { return rho_.space(); }
  const CliffordElement& density() const noexcept { return rho_; }
  const Spectrum& density_spectrum() const noexcept { return spectrum_; }
  /// ‖φ‖ = τ(ρ).
  double norm() const noexcept { return norm_; }
  /// min eigenvalue of ρ > 1e-14·‖ρ‖.
  bool faithful() const noexcept { return faithful_; }

  /// φ(x) = τ(ρx).
  cplx operator()(const CliffordElement& x) const;

  State scaled(double c) const;
  /// φ/‖φ‖; throws for the zero functional.
  State normalized() const;

 private:
  CliffordElement rho_;
  Spectrum spectrum_;
  double norm_ = 0.0;
  bool faithful_ = false;
};

}  // namespace clsi
