#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clsi/energy_forms.hpp"
#include "clsi/lsi.hpp"
#include "clsi/state.hpp"

namespace clsi {

/// A one-particle operator A = G + F + δm·I, self-adjoint and commuting with J.
struct OneParticleOperator {
  Mat A;
  std::optional<Mat> G;
  std::optional<Mat> F;  // trace-class tag; every matrix qualifies at this scale
  std::optional<double> delta_m;

  /// Validates A (self-adjoint, real) and, when all parts are given, the sum.
  explicit OneParticleOperator(Mat a);
  OneParticleOperator(Mat g, Mat f, double delta_m);

  double mu() const;  // min eigenvalue of A
};

/// ψ_β^h with density exp(ln ρ_ψ - βh)/τ(exp(ln ρ_ψ - βh)); for ψ = τ this
/// is e^{-βh}/τ(e^{-βh}).
State gibbs_state(const CliffordElement& h, double beta, const std::optional<State>& psi = std::nullopt);
/// c_β(h, ψ) = -(1/β) ln τ(exp(ln ρ_ψ - βh)).
double log_partition(const CliffordElement& h, double beta, const std::optional<State>& psi = std::nullopt);

struct VariationalOptions {
  int starts = 4;
  int max_iterations = 400;
  double step = 0.5;  // mirror step as a fraction of β
  double gap_tol = 1e-12;
  std::size_t check_samples = 50;
  std::uint64_t seed = 0xB0B;
};

struct VariationalResult {
  double value = 0.0;
  State minimizer;
  double gap_bound = 0.0;  // F(ρ) - inf F ≤ τ(ρG) - λ_min(G), G the gradient
  int iterations = 0;
  bool converged = false;
  /// min over random φ of (1/β)S(φ|ψ) + φ(h) - (1/β)S(φ|ψ_β^h) - c_β.
  double shifted_worst_slack = 0.0;
};

/// inf{(1/β)S(φ|ψ) + φ(h)} by entropic mirror descent over the density
/// simplex, from several starts.
VariationalResult variational_c_beta(const CliffordElement& h, const State& psi, double beta,
                                     const VariationalOptions& options = {});

/// (1/β)S(φ|ψ) + φ(h)
double free_energy(const State& phi, const State& psi, const CliffordElement& h, double beta);

/// Trace-norm distance τ(|ρ₁ - ρ₂|).
double trace_distance(const State& a, const State& b);

/// H_h = H_0 + (L_h + JL_hJ)/2, with JL_hJ = R_h for self-adjoint h.
EnergyForm perturbed_form(const EnergyForm& e0, const CliffordElement& h);

struct BoundSides {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return rhs - lhs; }
};

struct PerturbationReport {
  double c_beta = 0.0;
  double c_beta_entropic = 0.0;  // (1/β)S(ψ_β^h|ψ₀) + ψ_β^h(h)
  State gibbs;
  double gamma_h = 0.0;
  double lambda_h = 0.0;
  double lambda_0 = 0.0;
  LsiCertificate perturbed_certificate;
  PropertyReport beurling_deny;
  bool perturbed_real = false;
  std::vector<BoundSides> bounds;  // ground-energy floor, shift, and the tracial partition shift
  bool verdict = false;
};

nlohmann::json to_json(const PerturbationReport& r);

/// Throws std::invalid_argument if `cert0` is invalid or does not match E₀.
PerturbationReport perturbed_lsi_and_stability(const EnergyForm& e0, const State& psi0, const LsiCertificate& cert0,
                                               const CliffordElement& h, const LsiOptions& options = {},
                                               double tol = 1e-8);

struct PhysicalReport {
  double mu = 0.0;
  double beta = 0.0;  // 2/μ in the entropy convention used here
  double domination_min_eigenvalue = 0.0;  // min eig of dΓ(A) - μN
  double field_identity_defect = 0.0;      // ‖L_α + R_α - (h + JhJ)/2‖, h = 2α
  LsiCertificate free_certificate;
  PerturbationReport perturbation;
  GroundStateReport ground;
  DegeneracyVerdict degeneracy;
  bool verdict = false;
};

nlohmann::json to_json(const PhysicalReport& r);

/// H = dΓ(A) + L_α + R_α with the full chain: LSI for dΓ(A) against τ with
/// β = 2/μ, perturbed LSI for h = 2α, ground state, degeneracy bound and
/// strict positivity. Throws if μ ≤ 0 or α is not self-adjoint.
PhysicalReport physical_hamiltonian(const OneParticleOperator& A, const CliffordElement& alpha,
                                    const LsiOptions& options = {});

}  // namespace clsi
