#pragma once

// Second-order perturbative density matrix and ground-state wave function.
//
// Everything is exact and in natural units (hbar = M = omega = 1); the
// coefficient of g^k x^p carries the units given by series_dimension(k, p).
// Coefficients are stored as plain coefficients of g^k, i.e. without the
// customary -g/hbar and g^2/(2 hbar^2) prefactors.

#include <array>
#include <iosfwd>
#include <utility>

#include "vpt/params.hpp"
#include "vpt/poly.hpp"
#include "vpt/rational.hpp"

namespace vpt::series {

/// E = sum_k coefficients[k] g^k with units energy_dimension(k).
struct EnergySeries {
  std::array<Rational, 3> coefficients;
  double evaluate(const OscillatorParams& p) const;
};

/// Full exponent of the low-temperature amplitude (x hbar*beta | x 0):
/// order 0 carries -x^2 and the -B/2 harmonic part.
struct AmplitudeExponent {
  GPoly beta_linear;  // coefficient of B = hbar*beta*omega
  GPoly constant;
};

AmplitudeExponent amplitude_exponent();

/// Minus the B-derivative of log Z; log Z collects the beta-linear part of
/// the amplitude exponent plus the Gaussian x-integral of the rest.
EnergySeries energy_series();

/// beta-independent part of log Z through g^2 (order 0 excluded).
std::array<Rational, 3> log_partition_constant();

/// Exponent of lim rho(x, x) relative to sqrt(1/pi): order 0 is -x^2.
/// Throws NumericError if the beta-linear parts do not cancel exactly.
GPoly rho_diagonal_series();

/// Exponent of Psi(x) = (1/pi)^(1/4) exp(...): half the rho exponent.
GPoly psi_exponent_series();

/// Psi(x) = (1/pi)^(1/4) e^{-x^2/2} [P_0 + g P_1 + g^2 P_2] with P_0 = 1.
GPoly psi_pert_series();

/// Order-g and order-g^2 coefficients of the integral of Psi^2 - 1 for a
/// prefactor series as returned by psi_pert_series().
std::pair<Rational, Rational> check_normalization(const GPoly& prefactor);

/// <x^(2k)> for the normalized weight e^{-x^2} / sqrt(pi): (2k-1)!! / 2^k.
Rational gaussian_average(int power);
Rational gaussian_average(const XPoly& p);

/// Integral of x^(2k) e^{-a x^2} over the real line.
double gaussian_moment(int k, double a);

/// Perturbative wave function at physical parameters.
double evaluate_psi(const GPoly& prefactor, double x, const OscillatorParams& p);

/// CSV with columns g_order,x_power,numerator,denominator,hbar_exp,mass_exp,omega_exp.
void write_csv(std::ostream& os, const GPoly& series);

}  // namespace vpt::series
