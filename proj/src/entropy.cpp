#include "clsi/entropy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace clsi {

namespace {

bool above(double lambda, double k) { return lambda > k * (1.0 + 1e-12); }

void require_faithful(const State& psi) {
  if (!psi.faithful()) throw std::invalid_argument("reference state is not faithful");
}

void require_nonempty(const std::vector<State>& seq) {
  if (seq.empty()) throw std::invalid_argument("sequence of functionals is empty");
}

}  // namespace

RealVec RNOperator::psi_weights() const { return (eigen.vectors.adjoint() * xi_psi.fock()).cwiseAbs2(); }

RealVec RNOperator::phi_weights() const { return (eigen.vectors.adjoint() * xi_phi.fock()).cwiseAbs2(); }

double RNOperator::tail_psi(double k) const {
  const RealVec w = psi_weights();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (above(eigen.values(j), k)) sum += w(j);
  }
  return sum;
}

double RNOperator::tail_self(double k) const {
  const RealVec w = phi_weights();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (above(eigen.values(j), k)) sum += w(j);
  }
  return sum;
}

RNOperator rn_operator(const State& phi, const State& psi) {
  require_same_space(phi.space(), psi.space());
  require_faithful(psi);
  const L2Vector xi_phi = state_vector(phi);
  const L2Vector xi_psi = state_vector(psi);
  const CliffordElement inv_sqrt(psi.space(), psi.density_spectrum().apply_to(
                                                  [](double s) { return 1.0 / std::sqrt(s); }, vacuum(psi.space())));
  Mat r = xi_phi.algebra().matrix() * inv_sqrt.right_matrix();
  r = (r + r.adjoint()) * 0.5;
  Spectrum eigen = hermitian_spectrum(r);
  for (Eigen::Index j = 0; j < eigen.values.size(); ++j) eigen.values(j) = std::max(eigen.values(j), 0.0);
  return RNOperator{r, eigen, xi_phi, xi_psi};
}

double rn_relation_defect(const RNOperator& r, const ModeSpace& m) {
  double worst = 0.0;
  for (Monomial s = 0; s < m.dim(); ++s) {
    const CliffordElement x = CliffordElement::monomial(s, m);
    const Vec lhs = r.matrix * left_action(x, r.xi_psi).fock();
    const Vec rhs = conjugation_J(left_action(x.adjoint(), r.xi_phi)).fock();
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

double relative_entropy(const RNOperator& r) {
  const RealVec w = r.psi_weights();
  double s = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    const double lambda = r.eigen.values(j);
    s += xlogx(lambda * lambda) * w(j);
  }
  return s;
}

double relative_entropy(const State& phi, const State& psi) { return relative_entropy(rn_operator(phi, psi)); }

double relative_entropy_density(const State& phi, const State& psi) {
  require_same_space(phi.space(), psi.space());
  require_faithful(psi);
  const Spectrum& sp = phi.density_spectrum();
  double self = 0.0;
  for (Eigen::Index j = 0; j < sp.values.size(); ++j) self += xlogx(sp.values(j));
  self /= static_cast<double>(phi.space().dim());
  const CliffordElement log_psi(psi.space(),
                                psi.density_spectrum().apply_to([](double s) { return std::log(s); }, vacuum(psi.space())));
  const double cross = trace(phi.density() * log_psi).real();
  return self - cross;
}

SupportBound support_entropy_bound(const State& phi, const State& psi) {
  SupportBound out;
  out.entropy = relative_entropy(phi, psi);
  out.bound = -std::log(psi(support_projection(phi)).real());
  return out;
}

std::vector<double> default_k_grid() {
  std::vector<double> grid;
  for (int j = -2; j <= 20; ++j) grid.push_back(std::ldexp(1.0, j));
  return grid;
}

std::string SequenceDiagnostics::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "n,k,tail_psi,tail_self,norm,overlap\n";
  for (std::size_t n = 0; n < size(); ++n) {
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      out << n + 1 << ',' << k_grid[j] << ',' << tail_psi[n][j] << ',' << tail_self[n][j] << ',' << norms[n] << ','
          << overlaps[n] << '\n';
    }
  }
  return out.str();
}

SequenceDiagnostics sequence_diagnostics(const std::vector<State>& seq, const State& psi,
                                         const std::vector<double>& k_grid) {
  require_nonempty(seq);
  require_faithful(psi);
  SequenceDiagnostics d;
  d.k_grid = k_grid;
  d.psi_norm = psi.norm();
  for (const State& phi : seq) {
    const RNOperator r = rn_operator(phi, psi);
    std::vector<double> tp, ts;
    for (double k : k_grid) {
      tp.push_back(r.tail_psi(k));
      ts.push_back(r.tail_self(k));
    }
    d.tail_psi.push_back(std::move(tp));
    d.tail_self.push_back(std::move(ts));
    d.norms.push_back(phi.norm());
    d.overlaps.push_back(inner(r.xi_psi, r.xi_phi).real());
    d.entropies.push_back(relative_entropy(r));
  }
  return d;
}

VanishingReport relative_vanishing(const std::vector<State>& seq, const State& psi, const std::vector<double>& k_grid,
                                   double tol) {
  VanishingReport rep;
  rep.diagnostics = sequence_diagnostics(seq, psi, k_grid);
  const auto& d = rep.diagnostics;
  for (double t : d.tail_psi.back()) rep.final_tail = std::max(rep.final_tail, t);
  rep.vanishing = rep.final_tail <= tol;
  rep.chebyshev_worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < d.size(); ++n) {
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      rep.chebyshev_worst_slack = std::min(rep.chebyshev_worst_slack, d.overlaps[n] / k_grid[j] - d.tail_psi[n][j]);
    }
  }
  return rep;
}

IntegrabilityReport uniform_integrability(const std::vector<State>& family, const State& psi,
                                          const std::vector<double>& k_grid, double tol) {
  if (k_grid.empty()) throw std::invalid_argument("k grid is empty");
  IntegrabilityReport rep;
  rep.diagnostics = sequence_diagnostics(family, psi, k_grid);
  const auto& d = rep.diagnostics;
  rep.sup_tail_self.assign(k_grid.size(), 0.0);
  rep.entropy_tail_worst_excess = -std::numeric_limits<double>::infinity();
  rep.corrected_tail_worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < d.size(); ++n) {
    rep.sup_entropy = std::max(rep.sup_entropy, d.entropies[n]);
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      rep.sup_tail_self[j] = std::max(rep.sup_tail_self[j], d.tail_self[n][j]);
      if (k_grid[j] <= 1.0) continue;
      const double denom = 2.0 * std::log(k_grid[j]);
      rep.entropy_tail_worst_excess = std::max(rep.entropy_tail_worst_excess, d.tail_self[n][j] - d.entropies[n] / denom);
      rep.corrected_tail_worst_excess =
          std::max(rep.corrected_tail_worst_excess,
                   d.tail_self[n][j] - (d.entropies[n] + d.psi_norm / std::numbers::e) / denom);
    }
  }
  rep.uniformly_integrable = rep.sup_tail_self.back() <= tol;
  return rep;
}

ConvergenceReport convergence_theorems(const std::vector<State>& seq, const State& psi,
                                       const std::vector<double>& k_grid, double tol) {
  ConvergenceReport rep;
  const VanishingReport van = relative_vanishing(seq, psi, k_grid, tol);
  rep.diagnostics = van.diagnostics;
  const auto& d = rep.diagnostics;
  rep.vanishing = van.vanishing;
  double sup_last = 0.0;
  for (std::size_t n = 0; n < d.size(); ++n) sup_last = std::max(sup_last, d.tail_self[n].back());
  rep.uniformly_integrable = sup_last <= tol;
  rep.norm_to_zero = d.norms.back() <= tol;
  rep.overlap_to_zero = d.overlaps.back() <= std::sqrt(tol);
  rep.equivalence_consistent = rep.norm_to_zero == (rep.vanishing && rep.uniformly_integrable);
  rep.overlap_criterion_consistent = !(rep.uniformly_integrable && rep.overlap_to_zero) || rep.norm_to_zero;

  rep.bookkeeping_holds = true;
  for (std::size_t n = 0; n < d.size(); ++n) {
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      BookkeepingRow row;
      row.member = n + 1;
      row.k = k_grid[j];
      row.norm = d.norms[n];
      row.tail_self = d.tail_self[n][j];
      row.head_self = d.norms[n] - d.tail_self[n][j];
      row.vanishing_bound = k_grid[j] * k_grid[j] * (d.psi_norm - d.tail_psi[n][j]);
      row.overlap_bound = k_grid[j] * d.overlaps[n];
      const double slack = 1e-10 * std::max(1.0, row.norm);
      if (row.head_self > row.vanishing_bound + slack || row.head_self > row.overlap_bound + slack) {
        rep.bookkeeping_holds = false;
      }
      rep.table.push_back(row);
    }
  }

  for (double eps = 1e-1; eps >= 1e-8 * 0.999; eps /= 10.0) {
    EpsilonRow row;
    row.epsilon = eps;
    row.k_epsilon = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      double sup = 0.0;
      for (std::size_t n = 0; n < d.size(); ++n) sup = std::max(sup, d.tail_self[n][j]);
      if (sup < eps) {
        row.k_epsilon = k_grid[j];
        row.final_vanishing_bound = k_grid[j] * k_grid[j] * (d.psi_norm - d.tail_psi.back()[j]);
        row.final_overlap_bound = k_grid[j] * d.overlaps.back();
        break;
      }
    }
    rep.epsilon_table.push_back(row);
  }
  return rep;
}

std::pair<double, double> separation_bound(double c) {
  // g(u) = (1 - c/(2u)) e^{-u} with u = ln k > 0; g'(u) = 0 gives
  // u² - (c/2)u - c/2 = 0.
  if (c <= 0.0) return {1.0, 1.0};
  const double h = 0.5 * c;
  const double u = 0.5 * (h + std::sqrt(h * h + 4.0 * h));
  return {(1.0 - h / u) * std::exp(-u), std::exp(u)};
}

SeparationReport entropy_sublevel_separation(const std::vector<State>& family, const State& psi, double budget) {
  require_nonempty(family);
  require_faithful(psi);
  if (budget < 0.0) throw std::invalid_argument("entropy budget must be nonnegative");
  SeparationReport rep;
  rep.budget = budget;
  std::tie(rep.nominal_bound, rep.nominal_k) = separation_bound(budget);
  std::tie(rep.certified_bound, rep.certified_k) = separation_bound(budget + psi.norm() / std::numbers::e);
  rep.min_overlap = std::numeric_limits<double>::infinity();
  rep.norms_bounded = true;
  const double slack = 1e-10;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const RNOperator r = rn_operator(family[i], psi);
    const double s = relative_entropy(r);
    if (s > budget + slack) {
      throw std::invalid_argument("family member " + std::to_string(i) + " has entropy " + std::to_string(s) +
                                  " above the budget " + std::to_string(budget));
    }
    rep.max_norm = std::max(rep.max_norm, family[i].norm());
    if (family[i].norm() > psi.norm() + budget + slack) rep.norms_bounded = false;
    rep.min_overlap = std::min(rep.min_overlap, inner(r.xi_psi, r.xi_phi).real());
  }
  rep.above_certified = rep.min_overlap >= rep.certified_bound - slack;
  rep.above_nominal = rep.min_overlap >= rep.nominal_bound - slack;
  return rep;
}

}  // namespace clsi
