#pragma once

#include "clsi/clifford.hpp"
#include "clsi/random.hpp"
#include "clsi/standard_form.hpp"
#include "clsi/state.hpp"

namespace clsi {

/// Element with independent standard complex Gaussian coefficients.
CliffordElement random_element(const ModeSpace& m, Rng& rng);
/// Self-adjoint element: real Gaussian weights on the self-adjoint basis
/// {e_S : σ_S = 1} ∪ {i e_S : σ_S = -1}.
CliffordElement random_selfadjoint(const ModeSpace& m, Rng& rng);
/// Ginibre-type density ρ = GG^*/τ(GG^*), a faithful state almost surely.
State random_state(const ModeSpace& m, Rng& rng);
/// State whose density has Fock-representation rank at least `rank`, rounded
/// up to a full spectral cluster.
State random_low_rank_state(const ModeSpace& m, int rank, Rng& rng);
/// Real vector ξ = a ξ_τ with a random self-adjoint.
L2Vector random_real_vector(const ModeSpace& m, Rng& rng);
/// Unit cone vector √ρ/‖√ρ‖ for a Ginibre density ρ.
L2Vector random_unit_cone_vector(const ModeSpace& m, Rng& rng);

}  // namespace clsi
