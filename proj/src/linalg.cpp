#include "clsi/linalg.hpp"

#include <vector>

namespace clsi {

Spectrum hermitian_spectrum(const Mat& m) {
  Mat h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolver failed to converge");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

void merge_clusters(Spectrum& s, double tol) {
  const Eigen::Index size = s.values.size();
  Eigen::Index begin = 0;
  while (begin < size) {
    Eigen::Index end = begin + 1;
    while (end < size && s.values(end) - s.values(end - 1) <= tol) ++end;
    const double mean = s.values.segment(begin, end - begin).mean();
    s.values.segment(begin, end - begin).setConstant(mean);
    begin = end;
  }
}

double hermitian_defect(const Mat& m) { return max_abs(Mat(m - m.adjoint())); }

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const SparseMat& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(m, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

Mat null_space(const Mat& m, double tol) {
  Mat gram = m.adjoint() * m;
  Spectrum s = hermitian_spectrum(gram);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    if (s.values(k) < tol * tol) keep.push_back(k);
  }
  Mat basis(m.cols(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) basis.col(j) = s.vectors.col(keep[j]);
  return basis;
}

}  // namespace clsi
