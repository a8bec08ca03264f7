#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace clsi {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;
using SparseMat = Eigen::SparseMatrix<cplx>;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct Spectrum {
  RealVec values;
  Mat vectors;

  double min() const { return values(0); }
  double max() const { return values(values.size() - 1); }
  /// Largest eigenvalue modulus (operator norm).
  double norm() const { return std::max(std::abs(min()), std::abs(max())); }

  /// f applied through the spectral calculus: V f(Λ) V*.
  template <class F>
  Mat apply(F&& f) const {
    RealVec fv(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) fv(k) = f(values(k));
    return vectors * fv.asDiagonal() * vectors.adjoint();
  }

  /// f(A) v without forming f(A).
  template <class F>
  Vec apply_to(F&& f, const Vec& v) const {
    Vec c = vectors.adjoint() * v;
    for (Eigen::Index k = 0; k < values.size(); ++k) c(k) *= f(values(k));
    return vectors * c;
  }
};

/// Spectral decomposition of the Hermitian part of `m`.
Spectrum hermitian_spectrum(const Mat& m);
/// Replaces each run of sorted eigenvalues with consecutive gaps ≤ tol by its
/// mean, restoring degeneracies that roundoff split apart.
void merge_clusters(Spectrum& s, double tol);

/// max |m - m*|
double hermitian_defect(const Mat& m);
double max_abs(const Mat& m);
double max_abs(const SparseMat& m);

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// Hermitian positive part f(s) = max(s, 0).
inline double positive_part(double s) { return s > 0.0 ? s : 0.0; }

/// Orthonormal basis of the numerical null space of a (tall) matrix, via the
/// eigenvectors of its Gram matrix with eigenvalue below `tol`.
Mat null_space(const Mat& m, double tol);

}  // namespace clsi
