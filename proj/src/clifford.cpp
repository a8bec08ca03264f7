#include "clsi/clifford.hpp"

#include <bit>
#include <stdexcept>

namespace clsi {

namespace {

Eigen::Index idx(Monomial s) { return static_cast<Eigen::Index>(s); }

}  // namespace

CliffordElement::CliffordElement(const ModeSpace& m, Vec coeffs) : space_(m), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != idx(static_cast<Monomial>(m.dim()))) {
    throw std::invalid_argument("coefficient vector has " + std::to_string(coeffs_.size()) + " entries, expected " +
                                std::to_string(m.dim()));
  }
}

CliffordElement CliffordElement::zero(const ModeSpace& m) {
  return CliffordElement(m, Vec::Zero(static_cast<Eigen::Index>(m.dim())));
}

CliffordElement CliffordElement::identity(const ModeSpace& m) { return scalar(1.0, m); }

CliffordElement CliffordElement::scalar(cplx c, const ModeSpace& m) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(m.dim()));
  v(0) = c;
  return CliffordElement(m, v);
}

CliffordElement CliffordElement::generator(int i, const ModeSpace& m) { return monomial(m.mode_mask(i), m); }

CliffordElement CliffordElement::monomial(Monomial s, const ModeSpace& m) {
  if (s >= m.dim()) throw std::out_of_range("monomial index outside the mode space");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(m.dim()));
  v(idx(s)) = 1.0;
  return CliffordElement(m, v);
}

CliffordElement CliffordElement::from_fock_matrix(const Mat& fock, const ModeSpace& m, double tol) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  if (fock.rows() != dim || fock.cols() != dim) throw std::invalid_argument("Fock matrix has wrong size");
  CliffordElement a(m, fock.col(0));
  const double deviation = max_abs(Mat(a.matrix() - fock));
  if (deviation > tol * std::max(1.0, max_abs(fock))) {
    throw std::invalid_argument("matrix does not belong to the Clifford algebra (deviation " +
                                std::to_string(deviation) + ")");
  }
  return a;
}

Mat CliffordElement::matrix() const {
  const auto dim = coeffs_.size();
  Mat out = Mat::Zero(dim, dim);
  for (Monomial s = 0; s < static_cast<Monomial>(dim); ++s) {
    const cplx c = coeffs_(idx(s));
    if (c == cplx(0.0)) continue;
    for (Monomial t = 0; t < static_cast<Monomial>(dim); ++t) {
      out(idx(s ^ t), idx(t)) += static_cast<double>(reorder_sign(s, t)) * c;
    }
  }
  return out;
}

Mat CliffordElement::right_matrix() const {
  const auto dim = coeffs_.size();
  Mat out = Mat::Zero(dim, dim);
  for (Monomial s = 0; s < static_cast<Monomial>(dim); ++s) {
    const cplx c = coeffs_(idx(s));
    if (c == cplx(0.0)) continue;
    for (Monomial t = 0; t < static_cast<Monomial>(dim); ++t) {
      out(idx(t ^ s), idx(t)) += static_cast<double>(reorder_sign(t, s)) * c;
    }
  }
  return out;
}

CliffordElement CliffordElement::adjoint() const {
  Vec v(coeffs_.size());
  for (Eigen::Index s = 0; s < coeffs_.size(); ++s) {
    v(s) = static_cast<double>(adjoint_sign(static_cast<Monomial>(s))) * std::conj(coeffs_(s));
  }
  return CliffordElement(space_, v);
}

bool CliffordElement::is_self_adjoint(double tol) const {
  const double scale = std::max(1.0, coeffs_.cwiseAbs().maxCoeff());
  return (adjoint().coeffs_ - coeffs_).cwiseAbs().maxCoeff() <= tol * scale;
}

double CliffordElement::norm() const {
  Eigen::JacobiSVD<Mat> svd(matrix());
  return svd.singularValues()(0);
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& other) {
  require_same_space(space_, other.space_);
  coeffs_ += other.coeffs_;
  return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& other) {
  require_same_space(space_, other.space_);
  coeffs_ -= other.coeffs_;
  return *this;
}

CliffordElement& CliffordElement::operator*=(cplx s) {
  coeffs_ *= s;
  return *this;
}

CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
CliffordElement operator*(cplx s, CliffordElement a) { return a *= s; }
CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) { return product(a, b); }

int reorder_sign(Monomial s, Monomial t) {
  // Each generator of S must pass the generators of T with a smaller mode
  // index, which sit on higher bits.
  int swaps = 0;
  while (s) {
    const int b = std::countr_zero(s);
    swaps += std::popcount(static_cast<Monomial>(static_cast<std::uint64_t>(t) >> (b + 1)));
    s &= s - 1;
  }
  return swaps % 2 ? -1 : 1;
}

int adjoint_sign(Monomial s) {
  const int k = degree(s);
  return (k * (k - 1) / 2) % 2 ? -1 : 1;
}

CliffordElement product(const CliffordElement& a, const CliffordElement& b) {
  require_same_space(a.space(), b.space());
  const auto dim = static_cast<Monomial>(a.space().dim());
  Vec out = Vec::Zero(static_cast<Eigen::Index>(dim));
  for (Monomial s = 0; s < dim; ++s) {
    const cplx as = a.coeff(s);
    if (as == cplx(0.0)) continue;
    for (Monomial t = 0; t < dim; ++t) {
      const cplx bt = b.coeff(t);
      if (bt == cplx(0.0)) continue;
      out(idx(s ^ t)) += static_cast<double>(reorder_sign(s, t)) * as * bt;
    }
  }
  return CliffordElement(a.space(), out);
}

cplx trace(const CliffordElement& a) { return a.coeff(0); }

Vec duality_transform(const CliffordElement& a) {
  const ModeSpace& m = a.space();
  Vec out = Vec::Zero(static_cast<Eigen::Index>(m.dim()));
  for (Monomial s = 0; s < m.dim(); ++s) {
    const cplx c = a.coeff(s);
    if (c == cplx(0.0)) continue;
    // Apply e_{ik}, then e_{ik-1}, ..., to Ω; each generator maps a basis
    // vector to ± another basis vector under the Jordan–Wigner realization.
    Monomial state = 0;
    double sign = 1.0;
    for (int i = m.modes(); i >= 1; --i) {
      const Monomial bit = m.mode_mask(i);
      if (!(s & bit)) continue;
      if (std::popcount(state & m.string_mask(i)) % 2) sign = -sign;
      state ^= bit;
    }
    out(idx(state)) += sign * c;
  }
  return out;
}

CliffordElement inverse_duality(const Vec& fock, const ModeSpace& m) { return CliffordElement(m, fock); }

Mat monomial_fock_matrix(Monomial s, const ModeSpace& m) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  SparseMat out(dim, dim);
  out.setIdentity();
  for (int i = 1; i <= m.modes(); ++i) {
    if (!(s & m.mode_mask(i))) continue;
    Vec x = Vec::Zero(m.modes());
    x(i - 1) = 1.0;
    out = out * field_operator(x, m).matrix;
  }
  return Mat(out);
}

CliffordElement parity_automorphism(const CliffordElement& a) {
  const Vec fock = parity(a.space()).matrix * a.coeffs();
  return CliffordElement(a.space(), fock);
}

Spectrum spectrum(const CliffordElement& a) {
  Spectrum sp = hermitian_spectrum(a.matrix());
  // Fock-space eigenvalues of an algebra element come in degenerate blocks;
  // f(a) only stays in the algebra if roundoff has not split them.
  merge_clusters(sp, 1e-14 * sp.norm());
  return sp;
}

CliffordElement function_of(const CliffordElement& a, const std::function<double(double)>& f) {
  if (!a.is_self_adjoint(1e-10)) throw std::invalid_argument("function_of: element is not self-adjoint");
  const Spectrum sp = spectrum(a);
  return CliffordElement(a.space(), sp.apply_to(f, vacuum(a.space())));
}

double min_eigenvalue(const CliffordElement& a) { return spectrum(a).min(); }

}  // namespace clsi
