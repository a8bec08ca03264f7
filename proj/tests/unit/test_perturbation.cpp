#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clsi/perturbation.hpp"
#include "clsi/random.hpp"
#include "clsi/sampling.hpp"
#include "test_support.hpp"

using namespace clsi;

namespace {

LsiOptions quick(std::uint64_t seed = 1) {
  LsiOptions o;
  o.samples = 300;
  o.near_samples = 16;
  o.starts = 4;
  o.max_iterations = 60;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("one-mode log partition") {
  const ModeSpace m(1);
  const CliffordElement h = CliffordElement::generator(1, m);
  CHECK(log_partition(h, 1.0) == doctest::Approx(-std::log(std::cosh(1.0))).epsilon(1e-12));
  CHECK(log_partition(h, 2.0) == doctest::Approx(-0.5 * std::log(std::cosh(2.0))).epsilon(1e-12));
}

TEST_CASE("Gibbs state against the dense exponential") {
  const ModeSpace m(3);
  Rng rng(4);
  const CliffordElement h = random_selfadjoint(m, rng);
  const double beta = 0.8;
  const Mat e = oracle::matrix_function(oracle::fock_matrix(h), [&](double x) { return std::exp(-beta * x); });
  const Mat expected = e / oracle::tau(e);
  CHECK(max_abs(Mat(gibbs_state(h, beta).density().matrix() - expected)) <= 1e-10);
  CHECK(log_partition(h, beta) == doctest::Approx(-std::log(oracle::tau(e)) / beta).epsilon(1e-12));

  const State psi = random_state(m, rng);
  const Mat log_psi = oracle::matrix_function(oracle::fock_matrix(psi.density()), [](double x) { return std::log(x); });
  const Mat shifted = oracle::matrix_function(Mat(log_psi - beta * oracle::fock_matrix(h)), [](double x) { return std::exp(x); });
  CHECK(log_partition(h, beta, psi) == doctest::Approx(-std::log(oracle::tau(shifted)) / beta).epsilon(1e-10));
}

TEST_CASE("log partition at large beta approaches the ground energy of h") {
  const ModeSpace m(2);
  Rng rng(21);
  const CliffordElement h = random_selfadjoint(m, rng);
  const Spectrum sp = spectrum(h);
  const double beta = 50.0;
  int degeneracy = 0;
  for (Eigen::Index j = 0; j < sp.values.size(); ++j) degeneracy += sp.values(j) - sp.min() <= 1e-9 ? 1 : 0;
  const double tau_pmin = static_cast<double>(degeneracy) / static_cast<double>(sp.values.size());
  const double laplace = sp.min() - std::log(tau_pmin) / beta;
  double gap = 1e300;
  for (Eigen::Index j = 0; j < sp.values.size(); ++j) {
    if (sp.values(j) - sp.min() > 1e-9) gap = std::min(gap, sp.values(j) - sp.min());
  }
  // c_β - laplace = -(1/β) ln(1 + Σ_{excited} e^{-β(λ - λ_min)} / mult) ≥ -(d/β) e^{-β gap}
  const double c = log_partition(h, beta);
  CHECK(c <= laplace + 1e-12);
  CHECK(c >= laplace - static_cast<double>(sp.values.size()) * std::exp(-beta * gap) / beta - 1e-12);
}

TEST_CASE("variational principle") {
  for (int n = 1; n <= 3; ++n) {
    const ModeSpace m(n);
    Rng rng(50 + n);
    for (int k = 0; k < 3; ++k) {
      const CliffordElement h = random_selfadjoint(m, rng);
      const State psi = k == 0 ? State::tracial(m) : random_state(m, rng);
      const double beta = 0.5 + rng.uniform();
      VariationalOptions o;
      o.check_samples = 10;
      const VariationalResult r = variational_c_beta(h, psi, beta, o);
      CHECK(std::abs(r.value - log_partition(h, beta, psi)) <= 1e-6);
      CHECK(trace_distance(r.minimizer, gibbs_state(h, beta, psi)) <= 1e-3);
      CHECK(r.gap_bound >= 0.0);
      CHECK(r.shifted_worst_slack >= -1e-9);
      // The Gibbs state attains the infimum.
      CHECK(free_energy(gibbs_state(h, beta, psi), psi, h, beta) ==
            doctest::Approx(log_partition(h, beta, psi)).epsilon(1e-9));
    }
  }
}

TEST_CASE("perturbed form adds the symmetric multiplication") {
  const ModeSpace m(2);
  Rng rng(6);
  const CliffordElement h = random_selfadjoint(m, rng);
  const EnergyForm e0 = clifford_dirichlet_form(m).form;
  const Mat expected = oracle::number_operator(2) + 0.5 * (oracle::fock_matrix(h) + oracle::right_matrix(h));
  CHECK(max_abs(Mat(perturbed_form(e0, h).hamiltonian() - expected)) <= 1e-12);
}

TEST_CASE("zero perturbation is a no-op") {
  const ModeSpace m(2);
  const EnergyForm e0 = clifford_dirichlet_form(m).form;
  const State tau = State::tracial(m);
  const LsiCertificate c0 = lsi_check(e0, tau, 2.0, 0.0, quick());
  const PerturbationReport r = perturbed_lsi_and_stability(e0, tau, c0, CliffordElement::zero(m), quick());
  CHECK(r.c_beta == doctest::Approx(0.0));
  CHECK(r.lambda_h == doctest::Approx(r.lambda_0));
  CHECK(r.gamma_h == doctest::Approx(c0.gamma));
  CHECK(r.perturbed_certificate.valid);
  CHECK(r.verdict);
  CHECK(trace_distance(r.gibbs, tau) <= 1e-12);
}

TEST_CASE("one-mode worked instance") {
  const ModeSpace m(1);
  const EnergyForm e0 = clifford_dirichlet_form(m).form;
  const State tau = State::tracial(m);
  const LsiCertificate c0 = lsi_check(e0, tau, 2.0, 0.0, quick());
  const CliffordElement h = CliffordElement::generator(1, m);
  const PerturbationReport r = perturbed_lsi_and_stability(e0, tau, c0, h, quick());
  const Mat hh = oracle::number_operator(1) + 0.5 * (oracle::fock_matrix(h) + oracle::right_matrix(h));
  CHECK(r.lambda_h == doctest::Approx(oracle::min_eig(hh)).epsilon(1e-12));
  CHECK(r.lambda_h == doctest::Approx((1.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
  CHECK(r.c_beta == doctest::Approx(-0.5 * std::log(std::cosh(2.0))).epsilon(1e-12));
  CHECK(r.verdict);
  for (const auto& b : r.bounds) CHECK(b.slack() >= -1e-8);
}

TEST_CASE("perturbation requires a valid matching certificate") {
  const ModeSpace m(1);
  const EnergyForm e0 = clifford_dirichlet_form(m).form;
  const State tau = State::tracial(m);
  const LsiCertificate bad = lsi_check(e0, tau, 0.9, 0.0, quick());
  CHECK_THROWS_AS(perturbed_lsi_and_stability(e0, tau, bad, CliffordElement::zero(m), quick()),
                  std::invalid_argument);
}

TEST_CASE("one-particle operators") {
  Mat a = Mat::Identity(2, 2);
  a(0, 1) = 0.2;
  CHECK_THROWS_AS(OneParticleOperator{a}, std::invalid_argument);
  a(1, 0) = 0.2;
  const OneParticleOperator op(a);
  CHECK(op.mu() == doctest::Approx(0.8));
  const OneParticleOperator parts(Mat::Identity(2, 2), Mat::Zero(2, 2), 0.5);
  CHECK(parts.mu() == doctest::Approx(1.5));
}

TEST_CASE("physical pipeline at three modes") {
  const ModeSpace m(3);
  Mat a = Mat::Identity(3, 3);
  a(0, 1) = a(1, 0) = 0.2;
  a(2, 2) = 0.7;
  Rng rng(8);
  CliffordElement alpha = random_selfadjoint(m, rng);
  alpha *= 0.1 / alpha.norm();
  const PhysicalReport r = physical_hamiltonian(OneParticleOperator(a), alpha, quick());
  CHECK(r.beta == doctest::Approx(2.0 / r.mu));
  CHECK(r.domination_min_eigenvalue >= -1e-10);
  CHECK(r.field_identity_defect <= 1e-12);
  CHECK(r.free_certificate.valid);
  CHECK(r.ground.multiplicity == 1);
  CHECK(r.ground.strictly_positive);
  CHECK(r.verdict);

  CHECK_THROWS_AS(physical_hamiltonian(OneParticleOperator(Mat::Zero(3, 3)), alpha, quick()),
                  std::invalid_argument);
}
