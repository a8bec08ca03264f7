#pragma once

// Reference constructions for the tests. Everything here is built from
// Kronecker products of 2×2 matrices and dense eigendecompositions, without
// the library's Fock or Clifford code paths.

#include <cmath>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "clsi/clifford.hpp"
#include "clsi/state.hpp"

namespace oracle {

using clsi::cplx;
using clsi::Mat;
using clsi::Vec;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// Mode 1 is the leftmost tensor factor (most significant bit); the sign
// string runs over the modes before i.
inline Mat annihilator(int i, int n) {
  Mat z = Mat::Zero(2, 2), lower = Mat::Zero(2, 2), id = Mat::Identity(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  lower(0, 1) = 1.0;  // |1⟩ ↦ |0⟩
  Mat out = Mat::Identity(1, 1);
  for (int k = 1; k <= n; ++k) out = kron(out, k < i ? z : (k == i ? lower : id));
  return out;
}

inline Mat generator(int i, int n) {
  const Mat a = annihilator(i, n);
  return a + a.adjoint();
}

// e_S for the bit pattern s, factors in increasing mode order.
inline Mat monomial(std::uint32_t s, int n) {
  Mat out = Mat::Identity(1 << n, 1 << n);
  for (int i = 1; i <= n; ++i) {
    if (s & (1u << (n - i))) out = out * generator(i, n);
  }
  return out;
}

inline Mat fock_matrix(const clsi::CliffordElement& a) {
  const int n = a.space().modes();
  Mat out = Mat::Zero(1 << n, 1 << n);
  for (std::uint32_t s = 0; s < (1u << n); ++s) out += a.coeffs()(s) * monomial(s, n);
  return out;
}

// Right multiplication ξ ↦ ξa in the basis e_SΩ.
inline Mat right_matrix(const clsi::CliffordElement& a) {
  const int n = a.space().modes();
  const Mat fa = fock_matrix(a);
  Mat out(1 << n, 1 << n);
  for (std::uint32_t s = 0; s < (1u << n); ++s) out.col(s) = (monomial(s, n) * fa).col(0);
  return out;
}

inline double tau(const Mat& m) { return m.trace().real() / static_cast<double>(m.rows()); }

inline Mat matrix_function(const Mat& herm, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Mat> es((herm + herm.adjoint()) * 0.5);
  Eigen::VectorXd fv = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * fv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// τ(ρ_φ ln ρ_φ - ρ_φ ln ρ_ψ) on dense Fock matrices.
inline double relative_entropy(const Mat& rho_phi, const Mat& rho_psi) {
  Eigen::SelfAdjointEigenSolver<Mat> ephi((rho_phi + rho_phi.adjoint()) * 0.5);
  double self = 0.0;
  for (Eigen::Index j = 0; j < ephi.eigenvalues().size(); ++j) self += xlogx(ephi.eigenvalues()(j));
  self /= static_cast<double>(rho_phi.rows());
  const Mat log_psi = matrix_function(rho_psi, [](double x) { return std::log(x); });
  return self - tau(rho_phi * log_psi);
}

inline double relative_entropy(const clsi::State& phi, const clsi::State& psi) {
  return relative_entropy(fock_matrix(phi.density()), fock_matrix(psi.density()));
}

inline double min_eig(const Mat& herm) {
  Eigen::SelfAdjointEigenSolver<Mat> es((herm + herm.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Number operator on the occupation basis.
inline Mat number_operator(int n) {
  Mat out = Mat::Zero(1 << n, 1 << n);
  for (int i = 1; i <= n; ++i) {
    const Mat a = annihilator(i, n);
    out += a.adjoint() * a;
  }
  return out;
}

// One mode, ρ = 1 + t e_1 against τ: S = ((1+t)ln(1+t) + (1-t)ln(1-t))/2 and
// E_N[√ρ ξ_τ] = ((√(1+t) - √(1-t))/2)².
inline double one_mode_entropy(double t) { return 0.5 * (xlogx(1.0 + t) + xlogx(1.0 - t)); }
inline double one_mode_energy(double t) {
  const double b = 0.5 * (std::sqrt(1.0 + t) - std::sqrt(1.0 - t));
  return b * b;
}

}  // namespace oracle
