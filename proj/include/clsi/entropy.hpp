#pragma once

#include <string>
#include <vector>

#include "clsi/standard_form.hpp"
#include "clsi/state.hpp"

namespace clsi {

/// R_φ(xξ_ψ) = Jx^*ξ_φ, realized as L_{√ρ_φ} R_{ρ_ψ^{-1/2}} on L² with its
/// spectral decomposition.
struct RNOperator {
  Mat matrix;
  Spectrum eigen;  // eigenvalues clamped at 0
  L2Vector xi_phi;
  L2Vector xi_psi;

  /// |(v_j|ξ_ψ)|² for each eigenvector v_j.
  RealVec psi_weights() const;
  /// |(v_j|ξ_φ)|² for each eigenvector v_j.
  RealVec phi_weights() const;
  /// ‖E(k,∞)ξ_ψ‖²
  double tail_psi(double k) const;
  /// (ξ_φ|E(k,∞)ξ_φ)
  double tail_self(double k) const;
};

/// Throws std::invalid_argument if ψ is not faithful.
RNOperator rn_operator(const State& phi, const State& psi);
/// max over monomials x of ‖R_φ(xξ_ψ) - Jx^*ξ_φ‖.
double rn_relation_defect(const RNOperator& r, const ModeSpace& m);

/// S(φ|ψ) = (ξ_ψ|R_φ² ln R_φ² ξ_ψ) from the eigenpairs of R_φ.
double relative_entropy(const State& phi, const State& psi);
double relative_entropy(const RNOperator& r);
/// S(φ|ψ) = τ(ρ_φ ln ρ_φ - ρ_φ ln ρ_ψ), with 0 ln 0 = 0.
double relative_entropy_density(const State& phi, const State& psi);

struct SupportBound {
  double entropy = 0.0;
  double bound = 0.0;  // -ln ψ(s_φ)
  double slack() const { return entropy - bound; }
  bool holds(double tol = 1e-10) const { return slack() >= -tol; }
};

SupportBound support_entropy_bound(const State& phi, const State& psi);

/// {2^j : j = -2..20}
std::vector<double> default_k_grid();

struct SequenceDiagnostics {
  std::vector<double> k_grid;
  std::vector<std::vector<double>> tail_psi;   // [member][k]
  std::vector<std::vector<double>> tail_self;  // [member][k]
  std::vector<double> norms;
  std::vector<double> overlaps;
  std::vector<double> entropies;
  double psi_norm = 0.0;

  std::size_t size() const { return norms.size(); }
  /// Columns n, k, tail_psi, tail_self, norm, overlap (n is 1-based).
  std::string to_csv() const;
};

SequenceDiagnostics sequence_diagnostics(const std::vector<State>& seq, const State& psi,
                                         const std::vector<double>& k_grid);

struct VanishingReport {
  SequenceDiagnostics diagnostics;
  bool vanishing = false;
  /// max over k of tail_psi for the last member.
  double final_tail = 0.0;
  /// min over members and k of (overlap/k - tail_psi); nonnegative when the
  /// Chebyshev-type bound ‖E(k,∞)ξ_ψ‖² ≤ (ξ_ψ|ξ_φ)/k holds.
  double chebyshev_worst_slack = 0.0;
};

VanishingReport relative_vanishing(const std::vector<State>& seq, const State& psi, const std::vector<double>& k_grid,
                                   double tol = 1e-8);

struct IntegrabilityReport {
  SequenceDiagnostics diagnostics;
  std::vector<double> sup_tail_self;  // per k
  bool uniformly_integrable = false;
  double sup_entropy = 0.0;
  /// max over members and k > 1 of tail_self - S/(2 ln k).
  double entropy_tail_worst_excess = 0.0;
  /// Same with the additive correction (S + ‖ψ‖/e)/(2 ln k), which accounts
  /// for the negative part of λ² ln λ² below λ = 1.
  double corrected_tail_worst_excess = 0.0;
};

IntegrabilityReport uniform_integrability(const std::vector<State>& family, const State& psi,
                                          const std::vector<double>& k_grid, double tol = 1e-8);

struct BookkeepingRow {
  std::size_t member = 0;
  double k = 0.0;
  double norm = 0.0;
  double tail_self = 0.0;
  double head_self = 0.0;      // (ξ_φ|E[0,k]ξ_φ)
  double vanishing_bound = 0.0;  // k²(ξ_ψ|E[0,k]ξ_ψ)
  double overlap_bound = 0.0;    // k·(ξ_ψ|ξ_φ)
};

struct EpsilonRow {
  double epsilon = 0.0;
  double k_epsilon = 0.0;  // smallest grid k with sup tail_self < ε, NaN if none
  double final_vanishing_bound = 0.0;
  double final_overlap_bound = 0.0;
};

struct ConvergenceReport {
  SequenceDiagnostics diagnostics;
  bool norm_to_zero = false;
  bool vanishing = false;
  bool uniformly_integrable = false;
  bool overlap_to_zero = false;
  /// norm → 0 ⇔ (vanishing ∧ UI) on the finite sequence.
  bool equivalence_consistent = false;
  /// UI ∧ overlap → 0 ⇒ norm → 0.
  bool overlap_criterion_consistent = false;
  /// head_self never exceeds either proof bound.
  bool bookkeeping_holds = false;
  std::vector<BookkeepingRow> table;
  std::vector<EpsilonRow> epsilon_table;
};

/// Classifies a finite sequence on the axes norm → 0, vanishing and UI. The
/// last member stands in for the limit; overlaps are compared against √tol
/// since (ξ_ψ|ξ_φ)² ≤ ‖ψ‖‖φ‖.
ConvergenceReport convergence_theorems(const std::vector<State>& seq, const State& psi,
                                       const std::vector<double>& k_grid, double tol = 1e-8);

struct SeparationReport {
  double budget = 0.0;
  double max_norm = 0.0;
  bool norms_bounded = false;  // ‖φ‖ ≤ ‖ψ‖ + B
  /// max_k (1 - B/(2 ln k))/k and its maximizer.
  double nominal_bound = 0.0;
  double nominal_k = 0.0;
  /// max_k (1 - (B + ‖ψ‖/e)/(2 ln k))/k, valid given the corrected tail bound.
  double certified_bound = 0.0;
  double certified_k = 0.0;
  double min_overlap = 0.0;
  bool above_certified = false;
  bool above_nominal = false;
};

/// Lower bound on (ξ_ψ|ξ_φ) over an entropy sublevel set. Throws if a member
/// exceeds the budget B.
SeparationReport entropy_sublevel_separation(const std::vector<State>& family, const State& psi, double budget);

/// sup_{k>1} (1 - c/(2 ln k))/k, maximized in closed form.
std::pair<double, double> separation_bound(double c);

}  // namespace clsi
