#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clsi/random.hpp"
#include "clsi/sampling.hpp"
#include "clsi/standard_form.hpp"
#include "test_support.hpp"

using namespace clsi;

TEST_CASE("J is an antiunitary involution with J L_a J = R_{a*}") {
  for (int n = 1; n <= 4; ++n) {
    const ModeSpace m(n);
    Rng rng(n);
    const CliffordElement a = random_element(m, rng);
    const L2Vector xi(m, rng.complex_vector(static_cast<Eigen::Index>(m.dim())));
    const L2Vector eta(m, rng.complex_vector(static_cast<Eigen::Index>(m.dim())));
    CHECK((conjugation_J(conjugation_J(xi)).fock() - xi.fock()).norm() <= 1e-14);
    CHECK(std::abs(inner(conjugation_J(xi), conjugation_J(eta)) - std::conj(inner(xi, eta))) <= 1e-12);
    CHECK(max_abs(Mat(conjugated_left_matrix(a) - oracle::right_matrix(a.adjoint()))) <= 1e-12);
  }
}

TEST_CASE("standard form axioms") {
  for (int n = 1; n <= 4; ++n) {
    const AxiomReport r = standard_form_axioms(ModeSpace(n), 20, 17);
    CHECK(r.passed);
    CHECK(r.commutant_dimension == (std::size_t{1} << n));
    CHECK(r.jmj_commutant_defect <= 1e-12);
    CHECK(r.j_fixes_cone_defect <= 1e-12);
    CHECK(r.ajaj_worst_min_eigenvalue >= -1e-12);
    // M is a factor for even n; for odd n the center is spanned by 1 and e_1⋯e_n.
    CHECK(r.center_dimension == (n % 2 == 0 ? 1u : 2u));
  }
  CHECK_THROWS_AS(standard_form_axioms(ModeSpace(6), 1, 1), std::invalid_argument);
}

TEST_CASE("cone membership") {
  const ModeSpace m(3);
  Rng rng(8);
  CHECK(cone_membership(trace_vector(m)));
  CHECK(cone_membership(random_unit_cone_vector(m, rng)));
  CHECK_FALSE(cone_membership(L2Vector(CliffordElement::generator(1, m))));
  CHECK(cone_min_eigenvalue(L2Vector(CliffordElement::generator(1, m))) == doctest::Approx(-1.0));
}

TEST_CASE("positive decomposition, modulus and wedge against dense calculus") {
  for (int n = 1; n <= 5; ++n) {
    const ModeSpace m(n);
    Rng rng(40 + n);
    for (int k = 0; k < 10; ++k) {
      const L2Vector xi = random_real_vector(m, rng);
      const ConePair parts = positive_decomposition(xi);
      CHECK(std::abs(inner(parts.positive_part, parts.negative_part)) <= 1e-12);
      CHECK(cone_membership(parts.positive_part));
      CHECK(cone_membership(parts.negative_part));
      CHECK(std::abs(modulus(xi).norm() - xi.norm()) <= 1e-12);

      const Mat a = oracle::fock_matrix(xi.algebra());
      const Vec plus = oracle::matrix_function(a, [](double x) { return std::max(x, 0.0); }).col(0);
      CHECK((parts.positive_part.fock() - plus).norm() <= 1e-10);
      const Vec capped = oracle::matrix_function(a, [](double x) { return std::min(x, 1.0); }).col(0);
      CHECK((wedge_with_trace(xi).fock() - capped).norm() <= 1e-10);
      CHECK((wedge(xi, trace_vector(m)).fock() - wedge_with_trace(xi).fock()).norm() <= 1e-12);
    }
  }
  const ModeSpace m(2);
  CHECK_THROWS_AS(positive_decomposition(L2Vector(cplx(0, 1) * CliffordElement::generator(1, m))),
                  std::invalid_argument);
}

TEST_CASE("state vectors and supports") {
  const ModeSpace m(3);
  Rng rng(12);
  const State phi = random_state(m, rng);
  const L2Vector xi = state_vector(phi);
  CHECK(cone_membership(xi));
  CHECK(xi.norm() * xi.norm() == doctest::Approx(phi.norm()).epsilon(1e-12));
  CHECK((state_of(xi).density().coeffs() - phi.density().coeffs()).norm() <= 1e-10);
  CHECK(is_faithful(phi));

  const State low = random_low_rank_state(m, 4, rng);
  CHECK_FALSE(is_faithful(low));
  const CliffordElement s = support_projection(low);
  CHECK(((s * s) - s).coeffs().norm() <= 1e-10);
  CHECK(((s * low.density()) - low.density()).coeffs().norm() <= 1e-10);
}

TEST_CASE("left and right actions") {
  const ModeSpace m(2);
  Rng rng(1);
  const CliffordElement a = random_element(m, rng);
  const CliffordElement b = random_element(m, rng);
  const L2Vector xi(b);
  CHECK((left_action(a, xi).fock() - (a * b).coeffs()).norm() <= 1e-12);
  CHECK((right_action(a, xi).fock() - (b * a).coeffs()).norm() <= 1e-12);
}
