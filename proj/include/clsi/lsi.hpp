#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clsi/energy_forms.hpp"
#include "clsi/report.hpp"
#include "clsi/standard_form.hpp"
#include "clsi/state.hpp"

namespace clsi {

struct LsiOptions {
  std::size_t samples = 10000;   // random unit cone vectors
  std::size_t near_samples = 64; // cone vectors close to ξ_ψ
  int starts = 16;               // optimizer starts
  int max_iterations = 120;
  std::uint64_t seed = 0x5EED;
  double tol = 1e-9;
  /// Additional unit cone vectors to test, e.g. a positive ground basis.
  std::vector<L2Vector> extra;
};

struct LsiSample {
  std::string source;  // corner | random | near | extra | optimizer
  double entropy = 0.0;
  double energy = 0.0;
  double deficiency = 0.0;
};

/// Sampled certificate for S(φ_ξ|ψ) ≤ β(E[ξ] - γ) on unit cone vectors.
struct LsiCertificate {
  ModeSpace space{1};
  std::string form_label;
  double form_lambda0 = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double worst_deficiency = 0.0;
  std::string worst_source;
  std::size_t n_samples = 0;
  double best_sampled_deficiency = 0.0;
  double optimizer_deficiency = 0.0;
  int optimizer_starts = 0;
  /// min over tested ξ of E[ξ] - S/β: the largest γ the samples allow.
  double free_energy_infimum = 0.0;
  /// E[ξ_ψ]; when γ equals it the inequality reads S/β ≤ E[ξ] - E[ξ_ψ].
  double reference_energy = 0.0;
  bool valid = false;
  std::vector<LsiSample> table;  // worst few samples per source
};

nlohmann::json to_json(const LsiCertificate& c);

/// S(φ_ξ|ψ) - β(E[ξ] - γ) for a unit cone vector ξ.
double lsi_deficiency(const EnergyForm& e, const State& psi, double beta, double gamma, const L2Vector& xi);

/// Throws for β ≤ 0 or a non-faithful ψ.
LsiCertificate lsi_check(const EnergyForm& e, const State& psi, double beta, double gamma,
                         const LsiOptions& options = {});

struct BestConstants {
  double beta_star = 0.0;  // best ratio S/(E - γ) found: a lower bound on the sharp β
  double gamma = 0.0;
  double best_scale = 0.0;  // distance parameter t of the maximizing density
  std::vector<std::pair<double, double>> ratio_by_scale;  // (t, best ratio)
  std::size_t evaluations = 0;
};

/// Estimates β* = sup S(φ_ξ|ψ)/(E[ξ] - γ) over unit cone vectors with E[ξ] > γ,
/// scanning densities exp(ln ρ_ψ + tX)/Z over directions X and distances t.
BestConstants lsi_best_constants(const EnergyForm& e, const State& psi, double gamma, const LsiOptions& options = {});

/// inf over unit cone vectors of E[ξ] - S(φ_ξ|ψ)/β (sampled and optimized);
/// any γ at or below this value is consistent with the samples.
double measure_gamma(const EnergyForm& e, const State& psi, double beta, const LsiOptions& options = {});

struct GroundStateReport {
  ModeSpace space{1};
  std::string form_label;
  double lambda0 = 0.0;
  int multiplicity = 0;
  double spectral_gap = 0.0;
  std::vector<L2Vector> eigenbasis;
  /// Real ground vector ξ₀ and its modulus |ξ₀| with the residual of |ξ₀|.
  std::optional<L2Vector> modulus_vector;
  double modulus_residual = 0.0;
  std::vector<L2Vector> positive_basis;
  bool positive_basis_verified = false;
  double positive_basis_residual = 0.0;
  /// For m₀ = 1: relative min eigenvalue of a_{|ξ₀|}.
  double ground_min_eigenvalue = 0.0;
  bool strictly_positive = false;
};

nlohmann::json to_json(const GroundStateReport& r);

GroundStateReport ground_state(const EnergyForm& e, double cluster_tol = 1e-8);

struct DegeneracyVerdict {
  double exponent = 0.0;  // β(λ₀ - γ)
  double bound = 0.0;     // e^{β(λ₀ - γ)}
  int multiplicity = 0;
  bool multiplicity_within_bound = false;
  std::vector<double> support_masses;  // ψ(s_i) per positive basis vector
  double support_floor = 0.0;          // e^{-β(λ₀ - γ)}
  bool supports_above_floor = false;
  double support_sum = 0.0;
  bool partition_holds = false;
  bool verdict = false;
};

nlohmann::json to_json(const DegeneracyVerdict& v);

/// Throws std::invalid_argument when the certificate is invalid or refers to
/// a different form.
DegeneracyVerdict degeneracy_bound_check(const GroundStateReport& report, const LsiCertificate& cert,
                                         const State& psi, double tol = 1e-9);

struct NondegeneracyVerdict {
  double exponent = 0.0;
  bool applicable = false;  // β(λ₀ - γ) < ln 2
  bool nondegenerate = false;
  double ground_energy_defect = 0.0;  // |E₀[ξ_{ψ₀}]|
  std::optional<MarkovReport> markov;
  bool verdict = false;
};

nlohmann::json to_json(const NondegeneracyVerdict& v);

NondegeneracyVerdict nondegeneracy_criterion(const EnergyForm& e, const GroundStateReport& report,
                                             const LsiCertificate& cert, std::size_t samples = 200,
                                             std::uint64_t seed = 7);

/// dΓ(diag(0, 1)) at two modes: ground space span{ξ_τ, e₁ξ_τ} with positive
/// basis √2·(1 ± e₁)/2.
EnergyForm degenerate_form();

}  // namespace clsi
