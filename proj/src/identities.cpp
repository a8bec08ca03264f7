#include "clsi/identities.hpp"

#include <algorithm>

#include "clsi/clifford.hpp"
#include "clsi/fock.hpp"
#include "clsi/random.hpp"
#include "clsi/sampling.hpp"

namespace clsi {

double IdentitySuite::max_deviation() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, -c.worst_margin);
  return worst;
}

nlohmann::json to_json(const IdentitySuite& s) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  return {{"modes", s.space.modes()}, {"max_deviation", s.max_deviation()}, {"checks", checks}};
}

namespace {

PropertyReport make(const char* name, std::size_t samples, double deviation, double tol) {
  return PropertyReport{name, samples, -deviation, deviation <= tol};
}

// e_S Ω built as B_{i1}(B_{i2}(⋯B_{ik}Ω)) with sparse field operators.
Vec monomial_on_vacuum(Monomial s, const std::vector<SparseMat>& fields, const ModeSpace& m) {
  Vec v = vacuum(m);
  for (int i = m.modes(); i >= 1; --i) {
    if (s & m.mode_mask(i)) v = fields[static_cast<std::size_t>(i - 1)] * v;
  }
  return v;
}

}  // namespace

IdentitySuite identity_suite(const ModeSpace& m, std::size_t samples, std::uint64_t seed, double tol) {
  IdentitySuite out;
  out.space = m;
  const auto n = static_cast<Eigen::Index>(m.modes());
  const auto dim = static_cast<Eigen::Index>(m.dim());

  out.checks.push_back(make("car_relations", static_cast<std::size_t>(n * n), car_relations_defect(m), tol));

  Rng rng(seed);
  SparseMat identity(dim, dim);
  identity.setIdentity();
  double field_dev = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const RealVec x = rng.real_vector(n);
    const RealVec y = rng.real_vector(n);
    const SparseMat bx = field_operator(x.cast<cplx>(), m).matrix;
    const SparseMat by = field_operator(y.cast<cplx>(), m).matrix;
    SparseMat anti = bx * by + by * bx;
    anti -= (2.0 * x.dot(y)) * identity;
    field_dev = std::max(field_dev, max_abs(anti));
  }
  out.checks.push_back(make("field_anticommutator", samples, field_dev, tol));

  double trace_dev = std::abs(trace(CliffordElement::identity(m)) - cplx(1.0));
  double positivity_dev = 0.0;
  double unitarity_dev = 0.0;
  double inverse_dev = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const CliffordElement a = random_element(m, rng);
    const CliffordElement b = random_element(m, rng);
    const double scale = a.coeffs().norm() * b.coeffs().norm();
    trace_dev = std::max(trace_dev, std::abs(trace(a * b) - trace(b * a)) / scale);
    // τ(a^*a) is real, nonnegative, and equals ‖aΩ‖².
    const cplx taa = trace(a.adjoint() * a);
    positivity_dev = std::max(positivity_dev, (std::abs(taa.imag()) + std::max(0.0, -taa.real())) / scale);
    const Vec da = duality_transform(a);
    const Vec db = duality_transform(b);
    unitarity_dev = std::max(unitarity_dev, std::abs(da.dot(db) - trace(a.adjoint() * b)) / scale);
    inverse_dev = std::max(inverse_dev, (inverse_duality(da, m).coeffs() - a.coeffs()).norm() / a.coeffs().norm());
  }
  out.checks.push_back(make("trace_cyclic", samples, trace_dev, tol));
  out.checks.push_back(make("trace_positive", samples, positivity_dev, tol));
  out.checks.push_back(make("duality_isometry", samples, unitarity_dev, tol));
  out.checks.push_back(make("duality_inverse", samples, inverse_dev, tol));

  std::vector<SparseMat> fields;
  for (Eigen::Index i = 0; i < n; ++i) fields.push_back(field_operator(Vec::Unit(n, i), m).matrix);
  double monomial_dev = 0.0;
  for (Monomial s = 0; s < m.dim(); ++s) {
    const Vec direct = monomial_on_vacuum(s, fields, m);
    monomial_dev = std::max(monomial_dev, (duality_transform(CliffordElement::monomial(s, m)) - direct).norm());
  }
  out.checks.push_back(make("duality_monomials", m.dim(), monomial_dev, tol));
  return out;
}

}  // namespace clsi
