#pragma once

#include <cstdint>

#include "clsi/clifford.hpp"
#include "clsi/state.hpp"

namespace clsi {

/// A vector of L²(M,τ) in Fock coordinates. Its algebra form a_ξ (the unique
/// element with a_ξ Ω = ξ) has the same coordinate vector.
class L2Vector {
 public:
  L2Vector(const ModeSpace& m, Vec fock);
  explicit L2Vector(const CliffordElement& a);

  const ModeSpace& space() const noexcept { return space_; }
  const Vec& fock() const noexcept { return fock_; }
  CliffordElement algebra() const { return CliffordElement(space_, fock_); }

  double norm() const { return fock_.norm(); }
  /// Jξ = ξ, equivalently a_ξ self-adjoint.
  bool is_real(double tol = 1e-12) const;
  /// a_ξ positive semidefinite, with the relative tolerance of cone_membership.
  bool is_positive(double tol = 1e-10) const;

  L2Vector& operator+=(const L2Vector& other);
  L2Vector& operator-=(const L2Vector& other);
  L2Vector& operator*=(cplx s);

 private:
  ModeSpace space_;
  Vec fock_;
};

L2Vector operator+(L2Vector a, const L2Vector& b);
L2Vector operator-(L2Vector a, const L2Vector& b);
L2Vector operator*(cplx s, L2Vector a);

/// ξ_τ = 1_M ξ_τ.
L2Vector trace_vector(const ModeSpace& m);
/// (ξ|η) = τ(a_ξ^* a_η), conjugate-linear in ξ.
cplx inner(const L2Vector& xi, const L2Vector& eta);

/// J(aξ_τ) = a^*ξ_τ.
L2Vector conjugation_J(const L2Vector& xi);

/// The linear map J L_a J as a matrix, built by applying J to basis vectors.
Mat conjugated_left_matrix(const CliffordElement& a);

/// a·ξ and ξ·a.
L2Vector left_action(const CliffordElement& a, const L2Vector& xi);
L2Vector right_action(const CliffordElement& a, const L2Vector& xi);

/// Minimum eigenvalue of the Hermitian part of a_ξ.
double cone_min_eigenvalue(const L2Vector& xi);
/// min eig(a_ξ) >= -tol·‖a_ξ‖, with a_ξ required to be self-adjoint.
bool cone_membership(const L2Vector& xi, double tol = 1e-10);

struct ConePair {
  L2Vector positive_part;
  L2Vector negative_part;
};

/// ξ = ξ₊ - ξ₋ with ξ± = (a_ξ)± Ω; throws std::invalid_argument if Jξ ≠ ξ.
ConePair positive_decomposition(const L2Vector& xi, double tol = 1e-10);
/// |ξ| = ξ₊ + ξ₋.
L2Vector modulus(const L2Vector& xi, double tol = 1e-10);

/// ξ ∧ ξ_ψ = ξ_ψ - (ξ_ψ - ξ)₊, the metric projection onto {η real : η ≤ ξ_ψ}.
L2Vector wedge(const L2Vector& xi, const L2Vector& xi_psi, double tol = 1e-10);
/// ξ ∧ ξ_τ computed as min(s, 1) applied to a_ξ.
L2Vector wedge_with_trace(const L2Vector& xi, double tol = 1e-10);

struct AxiomReport {
  int modes = 0;
  std::size_t samples = 0;
  /// max over basis a of ‖J L_a J - R_{a*}‖ and of the commutators with M.
  double jmj_commutant_defect = 0.0;
  /// dim M' obtained by solving the commutation equations; equals dim JMJ = 2^n.
  std::size_t commutant_dimension = 0;
  std::size_t center_dimension = 0;
  /// max ‖Jξ - ξ‖ over sampled cone vectors.
  double j_fixes_cone_defect = 0.0;
  /// min over samples of the relative min eigenvalue of aJaJξ.
  double ajaj_worst_min_eigenvalue = 0.0;
  bool passed = false;
};

/// Standard-form axioms at n ≤ 5: JMJ = M', J fixes the cone, aJaJ preserves it.
AxiomReport standard_form_axioms(const ModeSpace& m, std::size_t samples, std::uint64_t seed);

/// ξ_φ = √ρ_φ ξ_τ.
L2Vector state_vector(const State& phi);
/// Range projection of ρ_φ.
CliffordElement support_projection(const State& phi);
bool is_faithful(const State& phi);
/// φ_ξ(x) = (ξ|xξ), with density a_ξ² for a cone vector ξ.
State state_of(const L2Vector& xi, double tol = 1e-10);

}  // namespace clsi
