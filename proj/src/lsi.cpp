#include "clsi/lsi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "clsi/random.hpp"
#include "clsi/sampling.hpp"

namespace clsi {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Entropy and energy over the unit positive cone, with densities either
/// given directly or parametrized as ρ(x) = exp(ln ρ_ψ + X(x))/Z, where X(x)
/// ranges over the traceless self-adjoint elements.
class Landscape {
 public:
  struct Value {
    double entropy = 0.0;
    double energy = 0.0;
    Vec xi;
  };

  Landscape(const EnergyForm& e, const State& psi) : m_(e.space()), h_(e.hamiltonian()) {
    require_same_space(e.space(), psi.space());
    if (!psi.faithful()) throw std::invalid_argument("LSI reference state is not faithful");
    log_psi_ = psi.density_spectrum().apply([](double s) { return std::log(s); });
    for (Monomial s = 1; s < m_.dim(); ++s) {
      const cplx c = adjoint_sign(s) == 1 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
      basis_.push_back(c * CliffordElement::monomial(s, m_).matrix());
    }
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  const ModeSpace& space() const { return m_; }

  Mat param_matrix(const RealVec& x) const {
    Mat out = Mat::Zero(h_.rows(), h_.cols());
    for (int k = 0; k < dim(); ++k) {
      if (x(k) != 0.0) out += x(k) * basis_[static_cast<std::size_t>(k)];
    }
    return out;
  }

  Value at_param(const RealVec& x) const {
    const Spectrum sp = hermitian_spectrum(log_psi_ + param_matrix(x));
    const double top = sp.max();
    RealVec p(sp.values.size());
    for (Eigen::Index j = 0; j < p.size(); ++j) p(j) = std::exp(sp.values(j) - top);
    p *= static_cast<double>(p.size()) / p.sum();
    return from_eigen(sp.vectors, p);
  }

  Value at_density(const Mat& rho) const {
    const Spectrum sp = hermitian_spectrum(rho);
    RealVec p = sp.values.cwiseMax(0.0);
    return from_eigen(sp.vectors, p);
  }

  Value at_vector(const L2Vector& xi) const {
    const Mat a = xi.algebra().matrix();
    Value v = at_density(a.adjoint() * a);
    v.xi = xi.fock();
    v.energy = xi.fock().dot(h_ * xi.fock()).real();
    return v;
  }

  /// ln ρ - ln ρ_ψ in parameter coordinates; ρ must be faithful.
  RealVec param_of_density(const Mat& rho) const {
    const Spectrum sp = hermitian_spectrum(rho);
    const Mat log_rho = sp.apply([](double s) { return std::log(std::max(s, 1e-300)); });
    const CliffordElement x(m_, (log_rho - log_psi_).col(0));
    RealVec out(dim());
    for (Monomial s = 1; s < m_.dim(); ++s) {
      const cplx c = adjoint_sign(s) == 1 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
      out(static_cast<Eigen::Index>(s) - 1) = (x.coeff(s) / c).real();
    }
    return out;
  }

 private:
  Value from_eigen(const Mat& v, const RealVec& p) const {
    const double d = static_cast<double>(p.size());
    Value out;
    double self = 0.0;
    for (Eigen::Index j = 0; j < p.size(); ++j) self += xlogx(p(j));
    const Mat rho = v * p.cast<cplx>().asDiagonal() * v.adjoint();
    const double cross = (rho * log_psi_).trace().real();
    out.entropy = (self - cross) / d;
    const Vec c = v.row(0).adjoint();  // V^* Ω
    out.xi = v * (p.cwiseSqrt().cast<cplx>().asDiagonal() * c);
    out.energy = out.xi.dot(h_ * out.xi).real();
    return out;
  }

  ModeSpace m_;
  Mat h_;
  Mat log_psi_;
  std::vector<Mat> basis_;
};

/// Normalized-gradient ascent with adaptive step and central differences.
template <class F>
double ascend(const F& f, RealVec& x, int iterations) {
  double fx = f(x);
  double step = 0.5;
  const double h = 1e-6;
  RealVec g(x.size());
  for (int it = 0; it < iterations && step > 1e-10; ++it) {
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      RealVec xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      g(k) = (f(xp) - f(xm)) / (2.0 * h);
    }
    const double gn = g.norm();
    if (!(gn > 1e-14)) break;
    bool moved = false;
    while (step > 1e-10) {
      const RealVec trial = x + (step / gn) * g;
      const double ft = f(trial);
      if (ft > fx) {
        x = trial;
        fx = ft;
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return fx;
}

void require_beta(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("LSI parameter beta must be positive");
}

struct Candidate {
  std::string source;
  double entropy;
  double energy;
  RealVec param;  // empty when the density is on the boundary
  std::size_t index = 0;  // sample counter for "random" candidates
};

}  // namespace

nlohmann::json to_json(const LsiCertificate& c) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& s : c.table) {
    table.push_back({{"source", s.source}, {"entropy", s.entropy}, {"energy", s.energy}, {"deficiency", s.deficiency}});
  }
  return {{"form", c.form_label},
          {"beta", c.beta},
          {"gamma", c.gamma},
          {"worst_deficiency", c.worst_deficiency},
          {"worst_source", c.worst_source},
          {"n_samples", c.n_samples},
          {"best_sampled_deficiency", c.best_sampled_deficiency},
          {"optimizer_deficiency", c.optimizer_deficiency},
          {"optimizer_starts", c.optimizer_starts},
          {"free_energy_infimum", c.free_energy_infimum},
          {"reference_energy", c.reference_energy},
          {"valid", c.valid},
          {"worst_samples", table}};
}

double lsi_deficiency(const EnergyForm& e, const State& psi, double beta, double gamma, const L2Vector& xi) {
  require_beta(beta);
  const Landscape land(e, psi);
  const Landscape::Value v = land.at_vector(xi);
  return v.entropy - beta * (v.energy - gamma);
}

LsiCertificate lsi_check(const EnergyForm& e, const State& psi, double beta, double gamma, const LsiOptions& options) {
  require_beta(beta);
  const Landscape land(e, psi);
  const ModeSpace& m = e.space();
  LsiCertificate cert;
  cert.space = m;
  cert.form_label = e.label();
  cert.form_lambda0 = e.lambda0();
  cert.beta = beta;
  cert.gamma = gamma;

  auto deficiency = [&](double s, double en) { return s - beta * (en - gamma); };
  std::vector<Candidate> candidates;
  auto add_vector = [&](const std::string& source, const L2Vector& xi) {
    const L2Vector unit = (1.0 / xi.norm()) * xi;
    const auto v = land.at_vector(unit);
    candidates.push_back({source, v.entropy, v.energy, RealVec()});
  };

  const L2Vector xi_psi = state_vector(psi);
  cert.reference_energy = e.value(xi_psi);
  for (const L2Vector& xi : cone_samples(m, 0, options.seed)) add_vector("corner", xi);
  for (const L2Vector& xi : options.extra) add_vector("extra", xi);
  for (std::size_t k = 0; k < options.samples; ++k) {
    Rng rng(sub_seed(options.seed, k));
    const State rho = random_state(m, rng);
    const auto v = land.at_density(rho.density().matrix());
    candidates.push_back({"random", v.entropy, v.energy, RealVec(), k});
  }
  const double scales[] = {1e-3, 1e-2, 1e-1, 0.5};
  for (std::size_t k = 0; k < options.near_samples; ++k) {
    Rng rng(sub_seed(options.seed ^ 0x4E4541520000ULL, k));
    RealVec x = rng.real_vector(land.dim());
    x *= scales[k % 4] / std::max(x.norm(), 1e-300);
    const auto v = land.at_param(x);
    candidates.push_back({"near", v.entropy, v.energy, x});
  }

  cert.n_samples = candidates.size();
  cert.best_sampled_deficiency = kNegInf;
  cert.free_energy_infimum = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    cert.best_sampled_deficiency = std::max(cert.best_sampled_deficiency, deficiency(c.entropy, c.energy));
  }

  // Optimizer starts: the best sampled points plus random directions.
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return deficiency(candidates[a].entropy, candidates[a].energy) >
           deficiency(candidates[b].entropy, candidates[b].energy);
  });
  auto objective = [&](const RealVec& x) {
    const auto v = land.at_param(x);
    return deficiency(v.entropy, v.energy);
  };
  cert.optimizer_deficiency = kNegInf;
  std::size_t next = 0;
  for (int s = 0; s < options.starts; ++s) {
    RealVec x;
    if (s % 2 == 0) {
      // Seed from one of the best sampled densities with full support.
      while (next < order.size() && x.size() == 0) {
        const Candidate& c = candidates[order[next++]];
        if (c.param.size() > 0) {
          x = c.param;
        } else if (c.source == "random") {
          Rng rng(sub_seed(options.seed, c.index));
          x = land.param_of_density(random_state(m, rng).density().matrix());
        }
      }
    }
    if (x.size() == 0) {
      Rng rng(sub_seed(options.seed ^ 0x0B7100000000ULL, static_cast<std::uint64_t>(s)));
      x = rng.real_vector(land.dim());
    }
    const double value = ascend(objective, x, options.max_iterations);
    const auto v = land.at_param(x);
    candidates.push_back({"optimizer", v.entropy, v.energy, x});
    cert.optimizer_deficiency = std::max(cert.optimizer_deficiency, value);
  }
  cert.optimizer_starts = options.starts;
  cert.n_samples = candidates.size();

  cert.worst_deficiency = kNegInf;
  for (const auto& c : candidates) {
    const double d = deficiency(c.entropy, c.energy);
    if (d > cert.worst_deficiency) {
      cert.worst_deficiency = d;
      cert.worst_source = c.source;
    }
    cert.free_energy_infimum = std::min(cert.free_energy_infimum, c.energy - c.entropy / beta);
  }
  // Keep the three worst samples of each source for the report.
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    return deficiency(a.entropy, a.energy) > deficiency(b.entropy, b.energy);
  });
  std::map<std::string, int> kept;
  for (const auto& c : candidates) {
    if (kept[c.source]++ < 3) cert.table.push_back({c.source, c.entropy, c.energy, deficiency(c.entropy, c.energy)});
  }
  cert.valid = cert.worst_deficiency <= options.tol;
  return cert;
}

BestConstants lsi_best_constants(const EnergyForm& e, const State& psi, double gamma, const LsiOptions& options) {
  if (max_abs(e.hamiltonian()) == 0.0) throw std::invalid_argument("energy form is identically zero");
  const Landscape land(e, psi);
  BestConstants out;
  out.gamma = gamma;
  const double scales[] = {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0};
  const int starts = std::max(1, options.starts / 4);
  for (double t : scales) {
    auto ratio = [&](const RealVec& dir) {
      const double nrm = dir.norm();
      if (!(nrm > 0.0)) return kNegInf;
      const auto v = land.at_param((t / nrm) * dir);
      ++out.evaluations;
      const double excess = v.energy - gamma;
      if (excess <= 1e-300) return kNegInf;
      return v.entropy / excess;
    };
    double best = kNegInf;
    for (int s = 0; s < starts; ++s) {
      Rng rng(sub_seed(options.seed ^ 0xBE7A00000000ULL, static_cast<std::uint64_t>(s)));
      // A small grid of random directions, then local ascent from the best.
      RealVec start = rng.real_vector(land.dim());
      double start_value = ratio(start);
      for (int g = 0; g < 8; ++g) {
        const RealVec d = rng.real_vector(land.dim());
        const double r = ratio(d);
        if (r > start_value) {
          start = d;
          start_value = r;
        }
      }
      if (!(start_value > kNegInf)) continue;
      const double r = ascend(ratio, start, options.max_iterations);
      best = std::max(best, r);
    }
    out.ratio_by_scale.emplace_back(t, best);
    if (best > out.beta_star) {
      out.beta_star = best;
      out.best_scale = t;
    }
  }
  return out;
}

double measure_gamma(const EnergyForm& e, const State& psi, double beta, const LsiOptions& options) {
  return lsi_check(e, psi, beta, 0.0, options).free_energy_infimum;
}

nlohmann::json to_json(const GroundStateReport& r) {
  return {{"form", r.form_label},
          {"lambda0", r.lambda0},
          {"multiplicity", r.multiplicity},
          {"spectral_gap", r.spectral_gap},
          {"modulus_residual", r.modulus_residual},
          {"positive_basis_size", r.positive_basis.size()},
          {"positive_basis_verified", r.positive_basis_verified},
          {"positive_basis_residual", r.positive_basis_residual},
          {"ground_min_eigenvalue", r.ground_min_eigenvalue},
          {"strictly_positive", r.strictly_positive}};
}

namespace {

double residual(const EnergyForm& e, const L2Vector& xi, double lambda) {
  return (e.hamiltonian() * xi.fock() - lambda * xi.fock()).norm() / std::max(xi.norm(), 1e-300);
}

/// Real orthonormal basis of span{v + Jv, i(v - Jv)} over the given vectors.
std::vector<L2Vector> real_basis(const std::vector<L2Vector>& vectors, std::size_t target) {
  std::vector<L2Vector> out;
  auto push = [&](L2Vector v) {
    for (const L2Vector& b : out) v -= inner(b, v).real() * b;
    const double nrm = v.norm();
    if (nrm > 1e-6) out.push_back((1.0 / nrm) * v);
  };
  for (const L2Vector& v : vectors) {
    if (out.size() >= target) break;
    const L2Vector jv = conjugation_J(v);
    push(v + jv);
    if (out.size() >= target) break;
    push(cplx(0.0, 1.0) * (v - jv));
  }
  return out;
}

int support_rank(const L2Vector& xi) {
  const Spectrum sp = hermitian_spectrum(xi.algebra().matrix());
  const double cut = 1e-8 * std::max(sp.norm(), 1e-300);
  int r = 0;
  for (Eigen::Index j = 0; j < sp.values.size(); ++j) r += std::abs(sp.values(j)) > cut;
  return r;
}

}  // namespace

GroundStateReport ground_state(const EnergyForm& e, double cluster_tol) {
  GroundStateReport rep;
  rep.space = e.space();
  rep.form_label = e.label();
  const Spectrum& sp = e.spectrum();
  rep.lambda0 = sp.min();
  const double range = sp.max() - sp.min();
  const double cut = rep.lambda0 + cluster_tol * range;
  int m0 = 0;
  while (m0 < sp.values.size() && sp.values(m0) <= cut) ++m0;
  rep.multiplicity = m0;
  rep.spectral_gap = m0 < sp.values.size() ? sp.values(m0) - rep.lambda0 : 0.0;
  for (int j = 0; j < m0; ++j) rep.eigenbasis.emplace_back(e.space(), sp.vectors.col(j));

  const std::vector<L2Vector> real = real_basis(rep.eigenbasis, static_cast<std::size_t>(m0));
  if (real.empty()) return rep;
  const L2Vector abs0 = modulus(real.front());
  rep.modulus_vector = abs0;
  rep.modulus_residual = residual(e, abs0, rep.lambda0);

  if (m0 == 1) {
    const L2Vector unit = (1.0 / abs0.norm()) * abs0;
    rep.positive_basis = {unit};
    rep.positive_basis_residual = rep.modulus_residual;
    rep.positive_basis_verified = rep.modulus_residual <= 1e-8;
    const Spectrum g = hermitian_spectrum(unit.algebra().matrix());
    rep.ground_min_eigenvalue = g.min() / std::max(g.norm(), 1e-300);
    rep.strictly_positive = rep.ground_min_eigenvalue > 1e-8;
    return rep;
  }

  // Cone candidates inside the eigenspace: positive and negative parts of basis
  // vectors and of their pairwise sums and differences.
  std::vector<L2Vector> candidates;
  auto add_parts = [&](const L2Vector& v) {
    const ConePair parts = positive_decomposition(v);
    for (const L2Vector& c : {parts.positive_part, parts.negative_part}) {
      if (c.norm() > 1e-8 && residual(e, c, rep.lambda0) <= 1e-8) candidates.push_back((1.0 / c.norm()) * c);
    }
  };
  for (std::size_t i = 0; i < real.size(); ++i) {
    add_parts(real[i]);
    for (std::size_t j = i + 1; j < real.size(); ++j) {
      add_parts(real[i] + real[j]);
      add_parts(real[i] - real[j]);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const L2Vector& a, const L2Vector& b) { return support_rank(a) < support_rank(b); });
  std::vector<L2Vector> chosen;
  for (const L2Vector& c : candidates) {
    bool orthogonal = true;
    for (const L2Vector& b : chosen) orthogonal = orthogonal && std::abs(inner(b, c)) <= 1e-8;
    if (orthogonal) chosen.push_back(c);
    if (chosen.size() == static_cast<std::size_t>(m0)) break;
  }
  if (chosen.size() == static_cast<std::size_t>(m0)) {
    rep.positive_basis = chosen;
    rep.positive_basis_verified = true;
    for (const L2Vector& c : chosen) {
      rep.positive_basis_residual = std::max(rep.positive_basis_residual, residual(e, c, rep.lambda0));
    }
    return rep;
  }
  // Fallback: moduli re-orthogonalized within the eigenspace; reported unverified.
  std::vector<L2Vector> moduli;
  for (const L2Vector& v : real) moduli.push_back(modulus(v));
  rep.positive_basis = real_basis(moduli, static_cast<std::size_t>(m0));
  rep.positive_basis_verified = false;
  for (const L2Vector& c : rep.positive_basis) {
    rep.positive_basis_residual = std::max(rep.positive_basis_residual, residual(e, c, rep.lambda0));
  }
  return rep;
}

nlohmann::json to_json(const DegeneracyVerdict& v) {
  return {{"exponent", v.exponent},
          {"bound", v.bound},
          {"multiplicity", v.multiplicity},
          {"multiplicity_within_bound", v.multiplicity_within_bound},
          {"support_masses", v.support_masses},
          {"support_floor", v.support_floor},
          {"supports_above_floor", v.supports_above_floor},
          {"support_sum", v.support_sum},
          {"partition_holds", v.partition_holds},
          {"verdict", v.verdict}};
}

namespace {

void require_matching(const GroundStateReport& report, const LsiCertificate& cert) {
  if (!cert.valid) throw std::invalid_argument("LSI certificate is not valid");
  if (!(report.space == cert.space) ||
      std::abs(report.lambda0 - cert.form_lambda0) > 1e-9 * std::max(1.0, std::abs(report.lambda0))) {
    throw std::invalid_argument("LSI certificate refers to a different energy form");
  }
}

}  // namespace

DegeneracyVerdict degeneracy_bound_check(const GroundStateReport& report, const LsiCertificate& cert,
                                         const State& psi, double tol) {
  require_matching(report, cert);
  DegeneracyVerdict v;
  v.exponent = cert.beta * (report.lambda0 - cert.gamma);
  v.bound = std::exp(v.exponent);
  v.multiplicity = report.multiplicity;
  v.multiplicity_within_bound = report.multiplicity <= v.bound + tol;
  v.support_floor = std::exp(-v.exponent);
  v.supports_above_floor = true;
  for (const L2Vector& xi : report.positive_basis) {
    const State phi = state_of((1.0 / xi.norm()) * xi);
    const double mass = psi(support_projection(phi)).real();
    v.support_masses.push_back(mass);
    v.support_sum += mass;
    if (mass < v.support_floor - tol) v.supports_above_floor = false;
  }
  v.partition_holds = v.support_sum <= 1.0 + tol;
  v.verdict = v.multiplicity_within_bound && v.supports_above_floor && v.partition_holds;
  return v;
}

nlohmann::json to_json(const NondegeneracyVerdict& v) {
  nlohmann::json j{{"exponent", v.exponent},
                   {"applicable", v.applicable},
                   {"nondegenerate", v.nondegenerate},
                   {"ground_energy_defect", v.ground_energy_defect},
                   {"verdict", v.verdict}};
  if (v.markov) {
    j["markov"] = nlohmann::json::array({to_json(v.markov->form), to_json(v.markov->order),
                                         to_json(v.markov->contraction), to_json(v.markov->positivity)});
  }
  return j;
}

NondegeneracyVerdict nondegeneracy_criterion(const EnergyForm& e, const GroundStateReport& report,
                                             const LsiCertificate& cert, std::size_t samples, std::uint64_t seed) {
  require_matching(report, cert);
  NondegeneracyVerdict v;
  v.exponent = cert.beta * (report.lambda0 - cert.gamma);
  v.applicable = v.exponent < std::numbers::ln2;
  v.nondegenerate = report.multiplicity == 1;
  if (!v.applicable) {
    v.verdict = true;  // inapplicable is reported, not failed
    return v;
  }
  const EnergyForm e0 = e.shifted(-report.lambda0);
  const L2Vector ground = (1.0 / report.positive_basis.front().norm()) * report.positive_basis.front();
  const State psi0 = state_of(ground);
  v.ground_energy_defect = std::abs(e0.value(state_vector(psi0)));
  if (psi0.faithful()) v.markov = check_markovian(e0, psi0, default_t_grid(), samples, seed);
  v.verdict = v.nondegenerate && v.ground_energy_defect <= 1e-8 && v.markov && v.markov->verdict;
  return v;
}

EnergyForm degenerate_form() {
  const ModeSpace m(2);
  Mat a = Mat::Zero(2, 2);
  a(1, 1) = 1.0;
  return EnergyForm::from_operator(second_quantize(a, m), "degenerate");
}

}  // namespace clsi
