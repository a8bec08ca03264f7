#pragma once

#include <vector>

#include "clsi/state.hpp"

namespace clsi {

/// (1/n)·τ sampled at n = 2^j, j = 0..count-1.
std::vector<State> norm_to_zero_family(const ModeSpace& m, int count = 31);

/// `count` copies of φ.
std::vector<State> constant_family(const State& phi, int count);

struct EscapingFamily {
  State psi;
  std::vector<State> members;
};

/// Four modes, four commuting minimal projections P_ab = (1 + a·ie₁e₂)/2 ·
/// (1 + b·ie₃e₄)/2 with τ(P_ab) = 1/4. The reference ψ puts weights
/// q = (2.4, 1.2, 0.4 - 1e-12, 1e-12) on them and φ_j = 4P_j. Each φ_j is a
/// state whose Radon–Nikodym operator has eigenvalue 2/√q_j on a block where
/// ξ_ψ has mass q_j/4. The last eigenvalue, 2e6, lies beyond the k grid, so
/// the mass of φ escapes while ‖φ_j‖ = 1.
EscapingFamily escaping_mass_family();

}  // namespace clsi
