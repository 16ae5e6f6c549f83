#pragma once

#include <stdexcept>

namespace vpt {

/// H = -(hbar^2 / 2M) d^2/dx^2 + (M/2) omega^2 x^2 + g x^4
struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double g = 0.0;
  double hbar = 1.0;

  void validate() const {
    if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
      throw std::invalid_argument("OscillatorParams: mass, omega and hbar must be positive");
    if (!(g >= 0.0)) throw std::invalid_argument("OscillatorParams: g must be nonnegative");
  }

  /// Oscillator length sqrt(hbar / (M omega)).
  double length_scale() const;
  /// Dimensionless coupling g hbar / (M^2 omega^3).
  double reduced_coupling() const;
  double potential(double x) const { return 0.5 * mass * omega * omega * x * x + g * x * x * x * x; }
};

}  // namespace vpt
