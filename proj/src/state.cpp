#include "clsi/state.hpp"

#include <stdexcept>

namespace clsi {

namespace {

// Eigenvalue roundoff is about 1e-16·‖ρ‖, so smaller values are numerically zero.
constexpr double kFaithfulTol = 1e-14;

}  // namespace

State::State(CliffordElement rho, double tol) : rho_(std::move(rho)) {
  if (!rho_.is_self_adjoint(1e-10)) throw std::invalid_argument("state density is not self-adjoint");
  rho_ = 0.5 * (rho_ + rho_.adjoint());
  spectrum_ = clsi::spectrum(rho_);
  const double scale = spectrum_.norm();
  if (spectrum_.min() < -tol * std::max(scale, 1e-300)) {
    throw std::invalid_argument("state density is not positive (min eigenvalue " + std::to_string(spectrum_.min()) +
                                ")");
  }
  norm_ = trace(rho_).real();
  faithful_ = scale > 0.0 && spectrum_.min() > kFaithfulTol * scale;
}

State State::tracial(const ModeSpace& m) { return State(CliffordElement::identity(m)); }

cplx State::operator()(const CliffordElement& x) const { return trace(rho_ * x); }

State State::scaled(double c) const {
  if (c < 0.0) throw std::invalid_argument("state can only be scaled by a nonnegative factor");
  return State(c * rho_);
}

State State::normalized() const {
  if (norm_ <= 0.0) throw std::invalid_argument("cannot normalize the zero functional");
  return scaled(1.0 / norm_);
}

}  // namespace clsi
