#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "clsi/entropy.hpp"
#include "clsi/families.hpp"
#include "clsi/random.hpp"
#include "clsi/sampling.hpp"
#include "test_support.hpp"

using namespace clsi;

namespace {

State one_mode(double t) {
  const ModeSpace m(1);
  return State(CliffordElement::identity(m) + t * CliffordElement::generator(1, m));
}

}  // namespace

TEST_CASE("relative entropy: both routes against the dense formula") {
  for (int n = 1; n <= 4; ++n) {
    const ModeSpace m(n);
    Rng rng(200 + n);
    for (int k = 0; k < 10; ++k) {
      const State phi = random_state(m, rng);
      const State psi = random_state(m, rng);
      const double expected = oracle::relative_entropy(phi, psi);
      CHECK(relative_entropy(phi, psi) == doctest::Approx(expected).epsilon(1e-9));
      CHECK(relative_entropy_density(phi, psi) == doctest::Approx(expected).epsilon(1e-9));
      CHECK(rn_relation_defect(rn_operator(phi, psi), m) <= 1e-10);
    }
  }
}

TEST_CASE("one-mode closed forms") {
  const State tau = State::tracial(ModeSpace(1));
  CHECK(relative_entropy(one_mode(1.0), tau) == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  for (double t : {0.1, 0.5, 0.9}) {
    CHECK(relative_entropy(one_mode(t), tau) == doctest::Approx(oracle::one_mode_entropy(t)).epsilon(1e-12));
  }
  CHECK(std::abs(relative_entropy(tau, tau)) <= 1e-14);
}

TEST_CASE("Radon-Nikodym operator of a state against itself") {
  const ModeSpace m(2);
  const State tau = State::tracial(m);
  CHECK(max_abs(Mat(rn_operator(tau, tau).matrix - Mat::Identity(4, 4))) <= 1e-12);

  // For general ψ it is Δ_ψ^{1/2}, which fixes ξ_ψ.
  Rng rng(3);
  const State psi = random_state(m, rng);
  const RNOperator r = rn_operator(psi, psi);
  CHECK((r.matrix * r.xi_psi.fock() - r.xi_psi.fock()).norm() <= 1e-10);
  const Mat rho = oracle::fock_matrix(psi.density());
  const Mat inv = oracle::matrix_function(rho, [](double x) { return 1.0 / x; });
  const Mat delta = oracle::fock_matrix(psi.density()) * oracle::right_matrix(CliffordElement::from_fock_matrix(inv, m));
  CHECK(max_abs(Mat(r.matrix * r.matrix - delta)) <= 1e-9);
  CHECK(r.tail_psi(0.5) == doctest::Approx(psi.norm()));
  CHECK(r.tail_psi(2.0) <= 1e-20);
  CHECK(std::abs(relative_entropy(r)) <= 1e-12);
}

TEST_CASE("non-faithful reference is rejected") {
  const State phi = one_mode(1.0);
  CHECK_THROWS_AS(rn_operator(State::tracial(ModeSpace(1)), phi), std::invalid_argument);
}

TEST_CASE("support bound") {
  const State tau = State::tracial(ModeSpace(1));
  const SupportBound flat = support_entropy_bound(one_mode(1.0), tau);
  CHECK(flat.entropy == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  CHECK(flat.bound == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  for (int n = 1; n <= 3; ++n) {
    const ModeSpace m(n);
    Rng rng(n + 70);
    for (int k = 0; k < 20; ++k) {
      const State phi = random_low_rank_state(m, 1 + static_cast<int>(rng.uniform() * m.dim()), rng).normalized();
      const State psi = random_state(m, rng);
      CHECK(support_entropy_bound(phi, psi).holds());
    }
  }
}

TEST_CASE("tail bound: nominal form fails on a two-point pair, corrected form holds") {
  // Commutative one-mode pair: densities diag(q) and diag(p) in the basis
  // (1 ± e_1)/2, with p/q large on one point and small on the other.
  const ModeSpace m(1);
  const auto one = CliffordElement::identity(m);
  const auto e1 = CliffordElement::generator(1, m);
  const auto density = [&](double lo, double hi) {
    return State(0.5 * (lo + hi) * one + 0.5 * (hi - lo) * e1);
  };
  const State psi = density(0.02, 1.98);
  const State phi = density(0.1, 1.9);
  const double s = relative_entropy(phi, psi);
  const RNOperator r = rn_operator(phi, psi);
  const double k = 2.0;
  CHECK(r.tail_self(k) > s / (2.0 * std::log(k)));
  CHECK(r.tail_self(k) <= (s + psi.norm() / std::numbers::e) / (2.0 * std::log(k)));

  const std::vector<State> family{phi};
  const IntegrabilityReport ui = uniform_integrability(family, psi, default_k_grid());
  CHECK(ui.entropy_tail_worst_excess > 0.0);
  CHECK(ui.corrected_tail_worst_excess <= 0.0);
}

TEST_CASE("classification of constructed families") {
  const ModeSpace m(2);
  const State tau = State::tracial(m);
  const auto grid = default_k_grid();

  const ConvergenceReport shrink = convergence_theorems(norm_to_zero_family(m), tau, grid);
  CHECK(shrink.norm_to_zero);
  CHECK(shrink.vanishing);
  CHECK(shrink.uniformly_integrable);
  CHECK(shrink.equivalence_consistent);
  CHECK(shrink.bookkeeping_holds);

  Rng rng(5);
  const ConvergenceReport constant = convergence_theorems(constant_family(random_state(m, rng), 8), tau, grid);
  CHECK_FALSE(constant.norm_to_zero);
  CHECK_FALSE(constant.vanishing);
  CHECK(constant.uniformly_integrable);  // any finite family is
  CHECK(constant.equivalence_consistent);

  const EscapingFamily esc = escaping_mass_family();
  const ConvergenceReport escaping = convergence_theorems(esc.members, esc.psi, grid);
  CHECK_FALSE(escaping.norm_to_zero);
  CHECK(escaping.vanishing);
  CHECK_FALSE(escaping.uniformly_integrable);
  CHECK(escaping.equivalence_consistent);
  CHECK(escaping.overlap_criterion_consistent);
  CHECK(escaping.bookkeeping_holds);
  for (const auto& phi : esc.members) CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-12));

  const VanishingReport van = relative_vanishing(esc.members, esc.psi, grid);
  CHECK(van.vanishing);
  CHECK(van.chebyshev_worst_slack >= -1e-12);
}

TEST_CASE("diagnostics CSV") {
  const ModeSpace m(1);
  const SequenceDiagnostics d = sequence_diagnostics(norm_to_zero_family(m, 2), State::tracial(m), {1.0, 2.0});
  const std::string csv = d.to_csv();
  CHECK(csv.rfind("n,k,tail_psi,tail_self,norm,overlap\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("sublevel separation") {
  const double c = std::numbers::ln2;
  const auto [value, k] = separation_bound(c);
  // brute-force maximization of (1 - c/(2 ln k))/k
  double best = -1.0;
  for (double x = 1.0001; x < 50.0; x *= 1.0001) best = std::max(best, (1.0 - c / (2.0 * std::log(x))) / x);
  CHECK(value == doctest::Approx(best).epsilon(1e-6));
  CHECK(k == doctest::Approx(2.197).epsilon(1e-3));

  const State tau = State::tracial(ModeSpace(1));
  const SeparationReport rep = entropy_sublevel_separation({one_mode(1.0)}, tau, c);
  CHECK(rep.norms_bounded);
  CHECK(rep.min_overlap == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.above_nominal);
  CHECK(rep.above_certified);
  CHECK_THROWS_AS(entropy_sublevel_separation({one_mode(1.0)}, tau, 0.1), std::invalid_argument);
}
