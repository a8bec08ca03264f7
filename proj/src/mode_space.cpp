#include "clsi/mode_space.hpp"

#include <stdexcept>

namespace clsi {

ModeSpace::ModeSpace(int modes) : n_(modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be positive, got " + std::to_string(modes));
  if (modes > kMaxModes) {
    throw std::invalid_argument("mode count " + std::to_string(modes) + " exceeds the desk-scale limit of " +
                                std::to_string(kMaxModes));
  }
}

Monomial ModeSpace::mode_mask(int mode) const {
  if (mode < 1 || mode > n_) {
    throw std::out_of_range("mode index " + std::to_string(mode) + " outside 1.." + std::to_string(n_));
  }
  return Monomial{1} << (n_ - mode);
}

Monomial ModeSpace::string_mask(int mode) const {
  const Monomial m = mode_mask(mode);
  const Monomial all = static_cast<Monomial>(dim() - 1);
  return all & ~((m << 1) - 1);
}

std::string ModeSpace::occupation_string(Monomial s) const {
  std::string out(static_cast<std::size_t>(n_), '0');
  for (int i = 1; i <= n_; ++i) {
    if (s & mode_mask(i)) out[static_cast<std::size_t>(i - 1)] = '1';
  }
  return out;
}

Monomial ModeSpace::parse_occupation(std::string_view bits) const {
  if (bits.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("occupation string has wrong length");
  Monomial s = 0;
  for (int i = 1; i <= n_; ++i) {
    const char c = bits[static_cast<std::size_t>(i - 1)];
    if (c == '1') {
      s |= mode_mask(i);
    } else if (c != '0') {
      throw std::invalid_argument("occupation string must contain only 0 and 1");
    }
  }
  return s;
}

void require_same_space(const ModeSpace& a, const ModeSpace& b) {
  if (!(a == b)) {
    throw std::invalid_argument("mode spaces differ: " + std::to_string(a.modes()) + " vs " +
                                std::to_string(b.modes()) + " modes");
  }
}

}  // namespace clsi
