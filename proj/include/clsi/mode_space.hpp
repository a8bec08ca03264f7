#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace clsi {

/// Desk-scale bound on the number of modes (Fock dimension 4096).
inline constexpr int kMaxModes = 12;

/// A set of modes, encoded as an index into the occupation basis.
using Monomial = std::uint32_t;

/// The one-particle space C^n with the conjugation J = complex conjugation of
/// coordinates in the real basis x_1..x_n.
///
/// Occupation strings s in {0,1}^n index the 2^n-dimensional Fock space in
/// lexicographic order with mode 1 most significant, so mode i lives on bit
/// n - i of the index and the vacuum is index 0.
class ModeSpace {
 public:
  explicit ModeSpace(int modes);

  int modes() const noexcept { return n_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }

  /// Index bit carrying the occupation of `mode` (1-based).
  Monomial mode_mask(int mode) const;
  /// Bits of all modes strictly before `mode` (the Jordan–Wigner string).
  Monomial string_mask(int mode) const;

  std::string occupation_string(Monomial s) const;
  Monomial parse_occupation(std::string_view bits) const;

  bool operator==(const ModeSpace&) const = default;

 private:
  int n_;
};

inline int degree(Monomial s) { return std::popcount(s); }

/// Throws std::invalid_argument if the two spaces differ.
void require_same_space(const ModeSpace& a, const ModeSpace& b);

}  // namespace clsi
