#include "clsi/perturbation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "clsi/entropy.hpp"
#include "clsi/fock.hpp"
#include "clsi/random.hpp"
#include "clsi/sampling.hpp"

namespace clsi {

namespace {

void require_selfadjoint(const CliffordElement& h, const char* what) {
  if (!h.is_self_adjoint(1e-10)) throw std::invalid_argument(std::string(what) + " is not self-adjoint");
}

void require_beta(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("inverse temperature beta must be positive");
}

Mat log_density(const State& psi) {
  if (!psi.faithful()) throw std::invalid_argument("reference state is not faithful");
  return psi.density_spectrum().apply([](double s) { return std::log(s); });
}

/// exp(ln ρ_ψ - βh) as a Fock matrix together with ln τ of it.
std::pair<Mat, double> tilted(const CliffordElement& h, double beta, const std::optional<State>& psi) {
  require_selfadjoint(h, "perturbation h");
  require_beta(beta);
  Mat k = -beta * h.matrix();
  if (psi) {
    require_same_space(psi->space(), h.space());
    k += log_density(*psi);
  }
  const Spectrum sp = hermitian_spectrum(k);
  const double top = sp.max();
  const Mat w = sp.apply([top](double s) { return std::exp(s - top); });
  const double log_tau = top + std::log(w.trace().real() / static_cast<double>(w.rows()));
  return {w, log_tau};
}

Mat to_hermitian(const Mat& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

OneParticleOperator::OneParticleOperator(Mat a) : A(std::move(a)) {
  if (A.rows() != A.cols() || A.rows() < 1) throw std::invalid_argument("one-particle operator must be square");
  const double scale = std::max(1.0, max_abs(A));
  if (hermitian_defect(A) > 1e-12 * scale) throw std::invalid_argument("one-particle operator is not self-adjoint");
  if (A.imag().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("one-particle operator does not commute with J");
  }
}

OneParticleOperator::OneParticleOperator(Mat g, Mat f, double dm)
    : OneParticleOperator(Mat(g + f + dm * Mat::Identity(g.rows(), g.cols()))) {
  G = std::move(g);
  F = std::move(f);
  delta_m = dm;
}

double OneParticleOperator::mu() const { return hermitian_spectrum(A).min(); }

State gibbs_state(const CliffordElement& h, double beta, const std::optional<State>& psi) {
  const auto [w, log_tau] = tilted(h, beta, psi);
  const double tr = w.trace().real() / static_cast<double>(w.rows());
  return State(CliffordElement(h.space(), w.col(0) / tr));
}

double log_partition(const CliffordElement& h, double beta, const std::optional<State>& psi) {
  return -tilted(h, beta, psi).second / beta;
}

double free_energy(const State& phi, const State& psi, const CliffordElement& h, double beta) {
  require_beta(beta);
  return relative_entropy_density(phi, psi) / beta + phi(h).real();
}

double trace_distance(const State& a, const State& b) {
  require_same_space(a.space(), b.space());
  const Spectrum sp = spectrum(a.density() - b.density());
  return sp.values.cwiseAbs().sum() / static_cast<double>(sp.values.size());
}

VariationalResult variational_c_beta(const CliffordElement& h, const State& psi, double beta,
                                     const VariationalOptions& options) {
  require_selfadjoint(h, "perturbation h");
  require_beta(beta);
  require_same_space(h.space(), psi.space());
  const ModeSpace& m = h.space();
  const Mat log_psi = log_density(psi);
  const Mat hm = to_hermitian(h.matrix());
  const double d = static_cast<double>(m.dim());
  const double eta = options.step * beta;

  VariationalResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < std::max(1, options.starts); ++s) {
    Rng rng(sub_seed(options.seed, static_cast<std::uint64_t>(s)));
    Mat log_rho = random_state(m, rng).density_spectrum().apply([](double x) { return std::log(std::max(x, 1e-300)); });
    double value = 0.0, gap = std::numeric_limits<double>::infinity();
    Mat rho;
    int it = 0;
    for (; it <= options.max_iterations; ++it) {
      // Normalize so that τ(ρ) = 1.
      Spectrum sp = hermitian_spectrum(log_rho);
      const double top = sp.max();
      const double shift = top + std::log(sp.values.unaryExpr([top](double x) { return std::exp(x - top); }).sum() / d);
      log_rho -= shift * Mat::Identity(log_rho.rows(), log_rho.cols());
      rho = sp.apply([shift](double x) { return std::exp(x - shift); });
      const Mat grad = to_hermitian((log_rho - log_psi) / beta + hm);
      value = ((rho * (log_rho - log_psi)).trace().real() / beta + (rho * hm).trace().real()) / d;
      gap = (rho * grad).trace().real() / d - hermitian_spectrum(grad).min();
      if (gap <= options.gap_tol || it == options.max_iterations) break;
      log_rho = to_hermitian(log_rho - eta * grad);
    }
    if (value < best.value) {
      best.value = value;
      best.minimizer = State(CliffordElement(m, rho.col(0)));
      best.gap_bound = std::max(gap, 0.0);
      best.iterations = it;
      best.converged = gap <= options.gap_tol;
    }
  }

  // Shifted inequality against the Gibbs state built from the result value.
  const State target = gibbs_state(h, beta, psi);
  const double c = log_partition(h, beta, psi);
  best.shifted_worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < options.check_samples; ++k) {
    Rng rng(sub_seed(options.seed ^ 0x5417FEDULL, k));
    const State phi = random_state(m, rng);
    const double rhs = free_energy(phi, psi, h, beta);
    const double lhs = relative_entropy_density(phi, target) / beta + c;
    best.shifted_worst_slack = std::min(best.shifted_worst_slack, rhs - lhs);
  }
  return best;
}

EnergyForm perturbed_form(const EnergyForm& e0, const CliffordElement& h) {
  require_selfadjoint(h, "perturbation h");
  require_same_space(e0.space(), h.space());
  const Mat pert = (h.matrix() + conjugated_left_matrix(h)) * 0.5;
  return EnergyForm(e0.space(), e0.hamiltonian() + pert, e0.label() + "+h");
}

nlohmann::json to_json(const PerturbationReport& r) {
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& b : r.bounds) {
    bounds.push_back({{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"slack", b.slack()}});
  }
  return {{"c_beta", r.c_beta},
          {"c_beta_entropic", r.c_beta_entropic},
          {"gamma_h", r.gamma_h},
          {"lambda_h", r.lambda_h},
          {"lambda_0", r.lambda_0},
          {"perturbed_real", r.perturbed_real},
          {"beurling_deny", to_json(r.beurling_deny)},
          {"perturbed_certificate", to_json(r.perturbed_certificate)},
          {"bounds", bounds},
          {"verdict", r.verdict}};
}

PerturbationReport perturbed_lsi_and_stability(const EnergyForm& e0, const State& psi0, const LsiCertificate& cert0,
                                               const CliffordElement& h, const LsiOptions& options, double tol) {
  if (!cert0.valid) throw std::invalid_argument("unperturbed LSI certificate is not valid");
  if (!(cert0.space == e0.space()) || std::abs(cert0.form_lambda0 - e0.lambda0()) > 1e-9 * std::max(1.0, std::abs(e0.lambda0()))) {
    throw std::invalid_argument("LSI certificate refers to a different energy form");
  }
  const double beta = cert0.beta;
  PerturbationReport rep;
  rep.c_beta = log_partition(h, beta, psi0);
  rep.gibbs = gibbs_state(h, beta, psi0);
  rep.c_beta_entropic = relative_entropy_density(rep.gibbs, psi0) / beta + rep.gibbs(h).real();
  rep.gamma_h = cert0.gamma + rep.c_beta;
  const EnergyForm eh = perturbed_form(e0, h);
  rep.lambda_h = eh.lambda0();
  rep.lambda_0 = e0.lambda0();
  rep.perturbed_real = check_real(eh);
  rep.beurling_deny = check_beurling_deny(eh, 200, options.seed ^ 0xBD);
  rep.perturbed_certificate = lsi_check(eh, rep.gibbs, beta, rep.gamma_h, options);

  rep.bounds.push_back({"ground_energy_floor", cert0.gamma + rep.c_beta_entropic, rep.lambda_h});
  rep.bounds.push_back({"ground_energy_shift", (cert0.gamma - rep.lambda_0) + rep.c_beta_entropic,
                        rep.lambda_h - rep.lambda_0});
  const bool tracial = (psi0.density() - CliffordElement::identity(psi0.space())).coeffs().cwiseAbs().maxCoeff() <= 1e-12;
  if (tracial) {
    const Spectrum hs = spectrum(h);
    double tau_exp = 0.0;
    for (Eigen::Index j = 0; j < hs.values.size(); ++j) tau_exp += std::exp(-beta * hs.values(j));
    const double log_tau = std::log(tau_exp / static_cast<double>(hs.values.size()));
    rep.bounds.push_back({"trace_partition_shift", (cert0.gamma - rep.lambda_0) - log_tau / beta,
                          rep.lambda_h - rep.lambda_0});
  }
  bool bounds_ok = std::abs(rep.c_beta - rep.c_beta_entropic) <= 1e-9 * std::max(1.0, std::abs(rep.c_beta));
  for (const auto& b : rep.bounds) bounds_ok = bounds_ok && b.slack() >= -tol;
  rep.verdict = bounds_ok && rep.perturbed_real && rep.beurling_deny.verdict && rep.perturbed_certificate.valid;
  return rep;
}

nlohmann::json to_json(const PhysicalReport& r) {
  return {{"mu", r.mu},
          {"beta", r.beta},
          {"domination_min_eigenvalue", r.domination_min_eigenvalue},
          {"field_identity_defect", r.field_identity_defect},
          {"free_certificate", to_json(r.free_certificate)},
          {"perturbation", to_json(r.perturbation)},
          {"ground", to_json(r.ground)},
          {"degeneracy", to_json(r.degeneracy)},
          {"verdict", r.verdict}};
}

PhysicalReport physical_hamiltonian(const OneParticleOperator& A, const CliffordElement& alpha,
                                    const LsiOptions& options) {
  const ModeSpace& m = alpha.space();
  if (A.A.rows() != m.modes()) throw std::invalid_argument("one-particle operator does not match the mode count");
  require_selfadjoint(alpha, "interaction alpha");
  PhysicalReport rep;
  rep.mu = A.mu();
  if (!(rep.mu > 0.0)) throw std::invalid_argument("one-particle operator must satisfy A >= mu I with mu > 0");
  rep.beta = 2.0 / rep.mu;

  const FockOperator dgamma = second_quantize(A.A, m);
  const EnergyForm e0 = EnergyForm::from_operator(dgamma, "dGamma");
  rep.domination_min_eigenvalue =
      hermitian_spectrum(Mat(dgamma.dense() - rep.mu * number_operator(m).dense())).min();

  const CliffordElement h = 2.0 * alpha;
  const Mat direct = alpha.matrix() + alpha.right_matrix();
  const Mat via_j = (h.matrix() + conjugated_left_matrix(h)) * 0.5;
  rep.field_identity_defect = max_abs(Mat(direct - via_j));

  const State tau = State::tracial(m);
  rep.free_certificate = lsi_check(e0, tau, rep.beta, 0.0, options);
  if (!rep.free_certificate.valid) return rep;
  rep.perturbation = perturbed_lsi_and_stability(e0, tau, rep.free_certificate, h, options);
  const EnergyForm eh = perturbed_form(e0, h);
  rep.ground = ground_state(eh);
  if (rep.perturbation.perturbed_certificate.valid) {
    rep.degeneracy = degeneracy_bound_check(rep.ground, rep.perturbation.perturbed_certificate, rep.perturbation.gibbs);
  }
  rep.verdict = rep.domination_min_eigenvalue >= -1e-10 && rep.field_identity_defect <= 1e-12 &&
                rep.perturbation.verdict && rep.degeneracy.verdict && rep.ground.multiplicity == 1 &&
                rep.ground.strictly_positive;
  return rep;
}

}  // namespace clsi
