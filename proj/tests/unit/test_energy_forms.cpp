#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clsi/energy_forms.hpp"
#include "clsi/random.hpp"
#include "clsi/sampling.hpp"
#include "test_support.hpp"

using namespace clsi;

TEST_CASE("number form equals the sum of squared annihilations") {
  for (int n = 1; n <= 4; ++n) {
    const ModeSpace m(n);
    const CliffordDirichlet cd = clifford_dirichlet_form(m);
    Rng rng(n);
    for (int k = 0; k < 5; ++k) {
      const L2Vector xi(m, rng.complex_vector(static_cast<Eigen::Index>(m.dim())));
      double expected = 0.0;
      for (int i = 1; i <= n; ++i) expected += (oracle::annihilator(i, n) * xi.fock()).squaredNorm();
      CHECK(cd.form.value(xi) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(cd.form.value_spectral(xi) == doctest::Approx(expected).epsilon(1e-10));
      CHECK(cd.derivation.norm_squared(xi) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(cd.form.lambda0() == doctest::Approx(0.0));
  }
}

TEST_CASE("form construction validates H") {
  const ModeSpace m(1);
  Mat h = Mat::Zero(2, 2);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(EnergyForm(m, h), std::invalid_argument);
  CHECK_THROWS_AS(EnergyForm(m, Mat::Identity(3, 3)), std::invalid_argument);
  const EnergyForm e = clifford_dirichlet_form(m).form;
  CHECK(e.shifted(0.5).lambda0() == doctest::Approx(0.5));
  CHECK(e.scaled(3.0).spectrum().max() == doctest::Approx(3.0));
}

TEST_CASE("semigroup") {
  const EnergyForm e = clifford_dirichlet_form(ModeSpace(2)).form;
  CHECK(max_abs(Mat(e.semigroup(0.0) - Mat::Identity(4, 4))) <= 1e-14);
  CHECK_THROWS_AS(e.semigroup(-1.0), std::invalid_argument);
  const Mat t = e.semigroup(0.7);
  CHECK(std::abs(t(3, 3) - std::exp(-1.4)) <= 1e-14);  // |11⟩ has N = 2
}

TEST_CASE("number form is real, positivity preserving, Beurling-Deny and Markovian") {
  for (int n = 1; n <= 3; ++n) {
    const ModeSpace m(n);
    const EnergyForm e = clifford_dirichlet_form(m).form;
    CHECK(check_real(e));
    CHECK(check_positivity_preserving(e, default_t_grid(), 20, 1).verdict);
    CHECK(check_beurling_deny(e, 50, 2).verdict);
    CHECK(check_markovian(e, State::tracial(m), default_t_grid(), 20, 3).verdict);
    CHECK(check_leibniz(m, 10, 4).verdict);
  }
}

TEST_CASE("dGamma of a positive real matrix is Markovian") {
  const ModeSpace m(3);
  Mat a = Mat::Identity(3, 3);
  a(0, 1) = a(1, 0) = 0.3;
  const EnergyForm e = EnergyForm::from_operator(second_quantize(a, m), "dGamma");
  CHECK(check_real(e));
  CHECK(check_markovian(e, State::tracial(m), default_t_grid(), 20, 5).verdict);
}

TEST_CASE("parity flip is a negative control") {
  const ModeSpace m(2);
  const EnergyForm e = parity_flip_form(m, 1.0);
  CHECK(check_real(e));
  CHECK_FALSE(check_positivity_preserving(e, default_t_grid(), 20, 1).verdict);
  CHECK_FALSE(check_beurling_deny(e, 50, 2).verdict);
}

TEST_CASE("Beurling-Deny check requires a real form") {
  const ModeSpace m(1);
  Mat h = Mat::Zero(2, 2);
  h(0, 1) = cplx(0.0, 1.0);
  h(1, 0) = cplx(0.0, -1.0);
  const EnergyForm e(m, h);
  CHECK_FALSE(check_real(e));
  CHECK_THROWS_AS(check_beurling_deny(e, 5, 1), std::invalid_argument);
}

TEST_CASE("left multiplication by i e1 e2 is self-adjoint but not real") {
  const ModeSpace m(2);
  const CliffordElement u = cplx(0.0, 1.0) * (CliffordElement::generator(1, m) * CliffordElement::generator(2, m));
  REQUIRE(u.is_self_adjoint());
  const EnergyForm e(m, u.matrix(), "i e1 e2");
  CHECK_FALSE(check_real(e));
  CHECK(real_defect(e) > 0.5);
}

TEST_CASE("cone samples") {
  const ModeSpace m(2);
  const auto samples = cone_samples(m, 10, 3);
  CHECK(samples.size() >= 10u);
  for (const auto& xi : samples) CHECK(cone_membership(xi));
  // the Ginibre part is normalized
  CHECK(samples.back().norm() == doctest::Approx(1.0).epsilon(1e-12));
}
