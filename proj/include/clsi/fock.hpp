#pragma once

#include <string>

#include "clsi/linalg.hpp"
#include "clsi/mode_space.hpp"

namespace clsi {

enum class OperatorKind { creator, annihilator, field, number, second_quantized, parity, custom };

std::string to_string(OperatorKind kind);

/// An operator on the Fermi-Fock space Λ(C^n), stored sparsely in occupation
/// coordinates.
struct FockOperator {
  ModeSpace space;
  SparseMat matrix;
  OperatorKind kind = OperatorKind::custom;

  Mat dense() const { return Mat(matrix); }
  FockOperator adjoint() const;
};

FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator*(cplx s, const FockOperator& a);

/// Ω, the vacuum occupation vector.
Vec vacuum(const ModeSpace& m);

/// a_i with a Jordan–Wigner string: parity of the modes before i, lowering on
/// mode i, identity on the later modes.
FockOperator annihilator(int i, const ModeSpace& m);
/// a_i^*
FockOperator creator(int i, const ModeSpace& m);

/// C_x = Σ x_i a_i^*  (complex-linear in x).
FockOperator creation(const Vec& x, const ModeSpace& m);
/// A_y = Σ conj(y_i) a_i  (conjugate-linear in y).
FockOperator annihilation(const Vec& y, const ModeSpace& m);
/// B_x = C_x + A_{Jx}.
FockOperator field_operator(const Vec& x, const ModeSpace& m);

/// N = Σ a_i^* a_i.
FockOperator number_operator(const ModeSpace& m);
/// dΓ(A) = Σ_ij A_ij a_i^* a_j for A self-adjoint and real (commuting with J).
FockOperator second_quantize(const Mat& A, const ModeSpace& m);
/// S = Γ(-I), diagonal (-1)^{|s|}.
FockOperator parity(const ModeSpace& m);
/// Γ(U), with matrix elements ⟨S|Γ(U)|T⟩ = det U[S,T].
FockOperator gamma(const Mat& U, const ModeSpace& m);

/// Largest deviation over all pairs (i, j) of the two CAR anticommutators
/// {a_i, a_j^*} = δ_ij and {a_i, a_j} = 0.
double car_relations_defect(const ModeSpace& m);

}  // namespace clsi
