#include "clsi/fock.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace clsi {

namespace {

constexpr double kStructureTol = 1e-12;

void require_dim(const Vec& x, const ModeSpace& m) {
  if (x.size() != m.modes()) {
    throw std::invalid_argument("one-particle vector has " + std::to_string(x.size()) + " entries, expected " +
                                std::to_string(m.modes()));
  }
}

void require_square(const Mat& A, const ModeSpace& m, const char* what) {
  if (A.rows() != m.modes() || A.cols() != m.modes()) {
    throw std::invalid_argument(std::string(what) + " must be " + std::to_string(m.modes()) + "x" +
                                std::to_string(m.modes()));
  }
}

}  // namespace

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::creator: return "creator";
    case OperatorKind::annihilator: return "annihilator";
    case OperatorKind::field: return "field";
    case OperatorKind::number: return "number";
    case OperatorKind::second_quantized: return "second-quantized";
    case OperatorKind::parity: return "parity";
    case OperatorKind::custom: return "custom";
  }
  return "custom";
}

FockOperator FockOperator::adjoint() const {
  OperatorKind k = kind;
  if (kind == OperatorKind::creator) k = OperatorKind::annihilator;
  if (kind == OperatorKind::annihilator) k = OperatorKind::creator;
  return FockOperator{space, SparseMat(matrix.adjoint()), k};
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  require_same_space(a.space, b.space);
  return FockOperator{a.space, SparseMat(a.matrix + b.matrix), OperatorKind::custom};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  require_same_space(a.space, b.space);
  return FockOperator{a.space, SparseMat(a.matrix - b.matrix), OperatorKind::custom};
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  require_same_space(a.space, b.space);
  return FockOperator{a.space, SparseMat(a.matrix * b.matrix), OperatorKind::custom};
}

FockOperator operator*(cplx s, const FockOperator& a) {
  return FockOperator{a.space, SparseMat(s * a.matrix), a.kind};
}

Vec vacuum(const ModeSpace& m) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(m.dim()));
  v(0) = 1.0;
  return v;
}

FockOperator annihilator(int i, const ModeSpace& m) {
  const Monomial bit = m.mode_mask(i);
  const Monomial string = m.string_mask(i);
  const auto dim = static_cast<Eigen::Index>(m.dim());
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(m.dim() / 2);
  for (Monomial s = 0; s < m.dim(); ++s) {
    if (!(s & bit)) continue;
    const double sign = (std::popcount(s & string) % 2) ? -1.0 : 1.0;
    entries.emplace_back(static_cast<Eigen::Index>(s ^ bit), static_cast<Eigen::Index>(s), sign);
  }
  SparseMat a(dim, dim);
  a.setFromTriplets(entries.begin(), entries.end());
  return FockOperator{m, a, OperatorKind::annihilator};
}

FockOperator creator(int i, const ModeSpace& m) { return annihilator(i, m).adjoint(); }

FockOperator creation(const Vec& x, const ModeSpace& m) {
  require_dim(x, m);
  const auto dim = static_cast<Eigen::Index>(m.dim());
  SparseMat c(dim, dim);
  for (int i = 1; i <= m.modes(); ++i) {
    if (x(i - 1) != cplx(0.0)) c += x(i - 1) * creator(i, m).matrix;
  }
  return FockOperator{m, c, OperatorKind::creator};
}

FockOperator annihilation(const Vec& y, const ModeSpace& m) {
  require_dim(y, m);
  const auto dim = static_cast<Eigen::Index>(m.dim());
  SparseMat a(dim, dim);
  for (int i = 1; i <= m.modes(); ++i) {
    if (y(i - 1) != cplx(0.0)) a += std::conj(y(i - 1)) * annihilator(i, m).matrix;
  }
  return FockOperator{m, a, OperatorKind::annihilator};
}

FockOperator field_operator(const Vec& x, const ModeSpace& m) {
  require_dim(x, m);
  const Vec jx = x.conjugate();
  return FockOperator{m, SparseMat(creation(x, m).matrix + annihilation(jx, m).matrix), OperatorKind::field};
}

FockOperator number_operator(const ModeSpace& m) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  std::vector<Eigen::Triplet<cplx>> entries;
  for (Monomial s = 0; s < m.dim(); ++s) {
    entries.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s), degree(s));
  }
  SparseMat n(dim, dim);
  n.setFromTriplets(entries.begin(), entries.end());
  return FockOperator{m, n, OperatorKind::number};
}

FockOperator second_quantize(const Mat& A, const ModeSpace& m) {
  require_square(A, m, "one-particle operator");
  const double scale = std::max(1.0, max_abs(A));
  if (hermitian_defect(A) > kStructureTol * scale) {
    throw std::invalid_argument("second_quantize: operator is not self-adjoint");
  }
  if (A.imag().cwiseAbs().maxCoeff() > kStructureTol * scale) {
    throw std::invalid_argument("second_quantize: operator does not commute with the conjugation J");
  }
  const auto dim = static_cast<Eigen::Index>(m.dim());
  SparseMat out(dim, dim);
  for (int i = 1; i <= m.modes(); ++i) {
    const SparseMat ci = creator(i, m).matrix;
    for (int j = 1; j <= m.modes(); ++j) {
      const cplx aij = A(i - 1, j - 1);
      if (aij == cplx(0.0)) continue;
      out += aij * SparseMat(ci * annihilator(j, m).matrix);
    }
  }
  out.prune(cplx(0.0));
  return FockOperator{m, out, OperatorKind::second_quantized};
}

FockOperator parity(const ModeSpace& m) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  std::vector<Eigen::Triplet<cplx>> entries;
  for (Monomial s = 0; s < m.dim(); ++s) {
    entries.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s), degree(s) % 2 ? -1.0 : 1.0);
  }
  SparseMat p(dim, dim);
  p.setFromTriplets(entries.begin(), entries.end());
  return FockOperator{m, p, OperatorKind::parity};
}

FockOperator gamma(const Mat& U, const ModeSpace& m) {
  require_square(U, m, "one-particle unitary");
  const Mat defect = U.adjoint() * U - Mat::Identity(m.modes(), m.modes());
  if (max_abs(defect) > 1e-10) throw std::invalid_argument("gamma: operator is not unitary");

  // Modes of each subset in ascending order, as zero-based row/column indices of U.
  std::vector<std::vector<int>> members(m.dim());
  for (Monomial s = 0; s < m.dim(); ++s) {
    for (int i = 1; i <= m.modes(); ++i) {
      if (s & m.mode_mask(i)) members[s].push_back(i - 1);
    }
  }
  const auto dim = static_cast<Eigen::Index>(m.dim());
  std::vector<Eigen::Triplet<cplx>> entries;
  for (Monomial s = 0; s < m.dim(); ++s) {
    for (Monomial t = 0; t < m.dim(); ++t) {
      if (degree(s) != degree(t)) continue;
      const auto k = static_cast<Eigen::Index>(members[s].size());
      cplx value = 1.0;
      if (k > 0) {
        Mat block(k, k);
        for (Eigen::Index r = 0; r < k; ++r) {
          for (Eigen::Index c = 0; c < k; ++c) block(r, c) = U(members[s][r], members[t][c]);
        }
        value = block.determinant();
      }
      if (std::abs(value) > 0.0) entries.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t), value);
    }
  }
  SparseMat g(dim, dim);
  g.setFromTriplets(entries.begin(), entries.end());
  return FockOperator{m, g, OperatorKind::custom};
}

double car_relations_defect(const ModeSpace& m) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  SparseMat identity(dim, dim);
  identity.setIdentity();
  std::vector<SparseMat> a, ad;
  for (int i = 1; i <= m.modes(); ++i) {
    a.push_back(annihilator(i, m).matrix);
    ad.push_back(creator(i, m).matrix);
  }
  double worst = 0.0;
  for (int i = 0; i < m.modes(); ++i) {
    for (int j = 0; j < m.modes(); ++j) {
      SparseMat mixed = a[i] * ad[j] + ad[j] * a[i];
      if (i == j) mixed -= identity;
      SparseMat same = a[i] * a[j] + a[j] * a[i];
      worst = std::max({worst, max_abs(mixed), max_abs(same)});
    }
  }
  return worst;
}

}  // namespace clsi
