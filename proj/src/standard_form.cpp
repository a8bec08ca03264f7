#include "clsi/standard_form.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "clsi/random.hpp"

namespace clsi {

namespace {

constexpr int kMaxAxiomModes = 5;

void require_real(const L2Vector& xi, const char* what) {
  if (!xi.is_real(1e-10)) throw std::invalid_argument(std::string(what) + ": vector is not real (Jξ ≠ ξ)");
}

/// Self-adjoint part of a_ξ; callers have checked realness.
Spectrum real_spectrum(const L2Vector& xi) { return hermitian_spectrum(xi.algebra().matrix()); }

/// Orbits of the entry pairs (r, c) under X ↦ L X L^T for the signed
/// permutations L = L_{e_i}. Returns the number of orbits carrying a consistent
/// sign, which is the dimension of the solution space of L X = X L.
std::size_t commutant_dimension(const ModeSpace& m) {
  const std::size_t dim = m.dim();
  const std::size_t cells = dim * dim;
  std::vector<std::size_t> parent(cells);
  std::vector<int> rel(cells, 0);  // sign parity relative to the parent
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<bool> inconsistent(cells, false);

  auto find = [&](std::size_t x) {
    int parity = 0;
    std::size_t root = x;
    while (parent[root] != root) {
      parity ^= rel[root];
      root = parent[root];
    }
    // Path compression with parity bookkeeping.
    std::size_t cur = x;
    int cur_parity = parity;
    while (parent[cur] != cur) {
      const std::size_t next = parent[cur];
      const int next_parity = cur_parity ^ rel[cur];
      parent[cur] = root;
      rel[cur] = cur_parity;
      cur = next;
      cur_parity = next_parity;
    }
    return std::pair{root, parity};
  };

  for (int i = 1; i <= m.modes(); ++i) {
    const Monomial bit = m.mode_mask(i);
    const Monomial string = m.string_mask(i);
    for (Monomial r = 0; r < dim; ++r) {
      // L_{e_i} e_t = s(t) e_{t ⊕ bit} under the Jordan–Wigner generators.
      const int sr = std::popcount(r & string) % 2;
      for (Monomial c = 0; c < dim; ++c) {
        const int sc = std::popcount(c & string) % 2;
        const std::size_t a = r * dim + c;
        const std::size_t b = (r ^ bit) * dim + (c ^ bit);
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        const int want = sr ^ sc;  // X(b) = (-1)^want X(a)
        if (ra == rb) {
          if ((pa ^ pb) != want) inconsistent[ra] = true;
        } else {
          parent[rb] = ra;
          rel[rb] = pa ^ pb ^ want;
          if (inconsistent[rb]) inconsistent[ra] = true;
        }
      }
    }
  }
  std::size_t count = 0;
  for (std::size_t x = 0; x < cells; ++x) {
    if (parent[x] == x && !inconsistent[x]) ++count;
  }
  return count;
}

std::size_t center_dimension(const ModeSpace& m) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  Mat stacked(dim * m.modes(), dim);
  for (int i = 1; i <= m.modes(); ++i) {
    const CliffordElement e = CliffordElement::generator(i, m);
    stacked.middleRows(dim * (i - 1), dim) = e.right_matrix() - e.matrix();
  }
  return static_cast<std::size_t>(null_space(stacked, 1e-9).cols());
}

}  // namespace

Mat conjugated_left_matrix(const CliffordElement& a) {
  const ModeSpace& m = a.space();
  const auto dim = static_cast<Eigen::Index>(m.dim());
  Mat out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Vec basis = Vec::Zero(dim);
    basis(c) = 1.0;
    out.col(c) = conjugation_J(left_action(a, conjugation_J(L2Vector(m, basis)))).fock();
  }
  return out;
}

L2Vector::L2Vector(const ModeSpace& m, Vec fock) : space_(m), fock_(std::move(fock)) {
  if (fock_.size() != static_cast<Eigen::Index>(m.dim())) throw std::invalid_argument("L2 vector has wrong dimension");
}

L2Vector::L2Vector(const CliffordElement& a) : L2Vector(a.space(), a.coeffs()) {}

bool L2Vector::is_real(double tol) const { return algebra().is_self_adjoint(tol); }

bool L2Vector::is_positive(double tol) const { return is_real(std::sqrt(tol)) && cone_membership(*this, tol); }

L2Vector& L2Vector::operator+=(const L2Vector& other) {
  require_same_space(space_, other.space_);
  fock_ += other.fock_;
  return *this;
}

L2Vector& L2Vector::operator-=(const L2Vector& other) {
  require_same_space(space_, other.space_);
  fock_ -= other.fock_;
  return *this;
}

L2Vector& L2Vector::operator*=(cplx s) {
  fock_ *= s;
  return *this;
}

L2Vector operator+(L2Vector a, const L2Vector& b) { return a += b; }
L2Vector operator-(L2Vector a, const L2Vector& b) { return a -= b; }
L2Vector operator*(cplx s, L2Vector a) { return a *= s; }

L2Vector trace_vector(const ModeSpace& m) { return L2Vector(CliffordElement::identity(m)); }

cplx inner(const L2Vector& xi, const L2Vector& eta) {
  require_same_space(xi.space(), eta.space());
  return xi.fock().dot(eta.fock());
}

L2Vector conjugation_J(const L2Vector& xi) { return L2Vector(xi.algebra().adjoint()); }

L2Vector left_action(const CliffordElement& a, const L2Vector& xi) { return L2Vector(a * xi.algebra()); }

L2Vector right_action(const CliffordElement& a, const L2Vector& xi) { return L2Vector(xi.algebra() * a); }

double cone_min_eigenvalue(const L2Vector& xi) { return real_spectrum(xi).min(); }

bool cone_membership(const L2Vector& xi, double tol) {
  if (!xi.is_real(std::max(tol, 1e-12))) return false;
  const Spectrum sp = real_spectrum(xi);
  return sp.min() >= -tol * sp.norm();
}

ConePair positive_decomposition(const L2Vector& xi, double tol) {
  (void)tol;
  require_real(xi, "positive_decomposition");
  const Spectrum sp = real_spectrum(xi);
  const Vec omega = vacuum(xi.space());
  Vec plus = sp.apply_to([](double s) { return s > 0.0 ? s : 0.0; }, omega);
  Vec minus = sp.apply_to([](double s) { return s < 0.0 ? -s : 0.0; }, omega);
  return ConePair{L2Vector(xi.space(), plus), L2Vector(xi.space(), minus)};
}

L2Vector modulus(const L2Vector& xi, double tol) {
  (void)tol;
  require_real(xi, "modulus");
  const Spectrum sp = real_spectrum(xi);
  return L2Vector(xi.space(), sp.apply_to([](double s) { return std::abs(s); }, vacuum(xi.space())));
}

L2Vector wedge(const L2Vector& xi, const L2Vector& xi_psi, double tol) {
  require_real(xi, "wedge");
  if (!cone_membership(xi_psi, tol)) throw std::invalid_argument("wedge: reference vector is not in the positive cone");
  return xi_psi - positive_decomposition(xi_psi - xi, tol).positive_part;
}

L2Vector wedge_with_trace(const L2Vector& xi, double tol) {
  (void)tol;
  require_real(xi, "wedge_with_trace");
  const Spectrum sp = real_spectrum(xi);
  return L2Vector(xi.space(), sp.apply_to([](double s) { return std::min(s, 1.0); }, vacuum(xi.space())));
}

AxiomReport standard_form_axioms(const ModeSpace& m, std::size_t samples, std::uint64_t seed) {
  if (m.modes() > kMaxAxiomModes) {
    throw std::invalid_argument("standard_form_axioms supports at most " + std::to_string(kMaxAxiomModes) + " modes");
  }
  AxiomReport report;
  report.modes = m.modes();
  report.samples = samples;

  // JMJ on the monomial basis: equals right multiplication by the adjoint and
  // commutes with every generator of M.
  for (Monomial s = 0; s < m.dim(); ++s) {
    const CliffordElement es = CliffordElement::monomial(s, m);
    const Mat jaj = conjugated_left_matrix(es);
    report.jmj_commutant_defect = std::max(report.jmj_commutant_defect, max_abs(Mat(jaj - es.adjoint().right_matrix())));
    for (int i = 1; i <= m.modes(); ++i) {
      const Mat ei = CliffordElement::generator(i, m).matrix();
      report.jmj_commutant_defect = std::max(report.jmj_commutant_defect, max_abs(Mat(jaj * ei - ei * jaj)));
    }
  }
  report.commutant_dimension = commutant_dimension(m);
  report.center_dimension = center_dimension(m);

  const auto dim = static_cast<Eigen::Index>(m.dim());
  report.ajaj_worst_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(sub_seed(seed, k));
    const CliffordElement g(m, rng.complex_vector(dim));
    const L2Vector xi(g * g.adjoint());  // a cone vector
    report.j_fixes_cone_defect = std::max(report.j_fixes_cone_defect, (conjugation_J(xi) - xi).norm());
    const CliffordElement a(m, rng.complex_vector(dim));
    const L2Vector image = left_action(a, conjugation_J(left_action(a, conjugation_J(xi))));
    const Spectrum sp = hermitian_spectrum(image.algebra().matrix());
    report.ajaj_worst_min_eigenvalue = std::min(report.ajaj_worst_min_eigenvalue, sp.min() / std::max(sp.norm(), 1e-300));
  }
  if (samples == 0) report.ajaj_worst_min_eigenvalue = 0.0;

  report.passed = report.jmj_commutant_defect <= 1e-12 && report.commutant_dimension == m.dim() &&
                  report.j_fixes_cone_defect <= 1e-12 && report.ajaj_worst_min_eigenvalue >= -1e-10;
  return report;
}

L2Vector state_vector(const State& phi) {
  return L2Vector(phi.space(), phi.density_spectrum().apply_to([](double s) { return std::sqrt(std::max(s, 0.0)); },
                                                                vacuum(phi.space())));
}

CliffordElement support_projection(const State& phi) {
  const Spectrum& sp = phi.density_spectrum();
  const double cut = 1e-12 * std::max(sp.norm(), 1e-300);
  return CliffordElement(phi.space(), sp.apply_to([cut](double s) { return s > cut ? 1.0 : 0.0; }, vacuum(phi.space())));
}

bool is_faithful(const State& phi) { return phi.faithful(); }

State state_of(const L2Vector& xi, double tol) {
  const CliffordElement a = xi.algebra();
  return State(a * a.adjoint(), tol);
}

}  // namespace clsi
