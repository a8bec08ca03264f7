#pragma once

#include <functional>

#include "clsi/fock.hpp"
#include "clsi/linalg.hpp"
#include "clsi/mode_space.hpp"

namespace clsi {

/// An element a = Σ_S a_S e_S of the Clifford algebra M = Cl(C^n, J), where
/// e_i = a_i + a_i^* are the self-adjoint generators and e_S = e_{i1}⋯e_{ik}
/// with i1 < ⋯ < ik.
///
/// Because e_S Ω equals the occupation vector |S⟩, the coefficient vector
/// coincides with the Fock vector aΩ and with the L² coordinates of aξ_τ.
class CliffordElement {
 public:
  CliffordElement(const ModeSpace& m, Vec coeffs);

  static CliffordElement zero(const ModeSpace& m);
  static CliffordElement identity(const ModeSpace& m);
  static CliffordElement scalar(cplx c, const ModeSpace& m);
  static CliffordElement generator(int i, const ModeSpace& m);
  static CliffordElement monomial(Monomial s, const ModeSpace& m);
  /// The element whose left-multiplication matrix is `fock`; throws if the
  /// matrix is not in M (deviation above `tol` relative to its size).
  static CliffordElement from_fock_matrix(const Mat& fock, const ModeSpace& m, double tol = 1e-10);

  const ModeSpace& space() const noexcept { return space_; }
  const Vec& coeffs() const noexcept { return coeffs_; }
  cplx coeff(Monomial s) const { return coeffs_(static_cast<Eigen::Index>(s)); }

  /// Fock representation (left multiplication L_a in L² coordinates).
  Mat matrix() const;
  /// Right multiplication ξ ↦ ξa in L² coordinates.
  Mat right_matrix() const;

  CliffordElement adjoint() const;
  bool is_self_adjoint(double tol = 1e-12) const;
  double norm() const;  // operator norm of the Fock matrix

  CliffordElement& operator+=(const CliffordElement& other);
  CliffordElement& operator-=(const CliffordElement& other);
  CliffordElement& operator*=(cplx s);

 private:
  ModeSpace space_;
  Vec coeffs_;
};

CliffordElement operator+(CliffordElement a, const CliffordElement& b);
CliffordElement operator-(CliffordElement a, const CliffordElement& b);
CliffordElement operator*(cplx s, CliffordElement a);
CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);

/// e_S e_T = reorder_sign(S, T) e_{S⊕T}.
int reorder_sign(Monomial s, Monomial t);
/// (e_S)^* = adjoint_sign(S) e_S, i.e. (-1)^{k(k-1)/2} for |S| = k.
int adjoint_sign(Monomial s);

CliffordElement product(const CliffordElement& a, const CliffordElement& b);

/// τ(a) = (Ω|aΩ).
cplx trace(const CliffordElement& a);

/// D(aξ_τ) = aΩ, evaluated by applying the Jordan–Wigner generators to Ω.
Vec duality_transform(const CliffordElement& a);
CliffordElement inverse_duality(const Vec& fock, const ModeSpace& m);

/// Matrix of e_S obtained as the product of Jordan–Wigner field operators.
Mat monomial_fock_matrix(Monomial s, const ModeSpace& m);

/// α(e_S) = (-1)^{|S|} e_S, implemented on Fock space by the parity S.
CliffordElement parity_automorphism(const CliffordElement& a);

/// Spectrum of the Fock matrix of a self-adjoint element, with eigenvalues
/// closer than 1e-14·‖a‖ merged.
Spectrum spectrum(const CliffordElement& a);

/// f(a) by spectral calculus; a must be self-adjoint.
CliffordElement function_of(const CliffordElement& a, const std::function<double(double)>& f);

/// Minimum eigenvalue of the Hermitian part of the Fock matrix.
double min_eigenvalue(const CliffordElement& a);

}  // namespace clsi
