#include "vpt/series.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "vpt/errors.hpp"
#include "vpt/lowtemp.hpp"
#include "vpt/truncated_series.hpp"

namespace vpt::series {

namespace {

using XSeries = TruncatedSeries<XPoly>;
using RSeries = TruncatedSeries<Rational>;

XSeries to_series(const GPoly& p) {
  XSeries s(GPoly::kMaxOrder);
  for (int k = 0; k <= GPoly::kMaxOrder; ++k) s[k] = p[k];
  return s;
}

GPoly from_series(const XSeries& s) {
  GPoly p;
  for (int k = 0; k <= GPoly::kMaxOrder; ++k) p[k] = s[k];
  return p;
}

// Orders >= 1 only.
GPoly perturbative_part(const GPoly& p) {
  GPoly out = p;
  out[0] = XPoly{};
  return out;
}

}  // namespace

double EnergySeries::evaluate(const OscillatorParams& p) const {
  double e = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Dim d = energy_dimension(k);
    e += to_double(coefficients[k]) * std::pow(p.g, k) * std::pow(p.hbar, d.hbar) * std::pow(p.mass, d.mass) *
         std::pow(p.omega, d.omega);
  }
  return e;
}

AmplitudeExponent amplitude_exponent() {
  AmplitudeExponent a;
  a.beta_linear[0] = XPoly::constant(Rational(-1, 2));
  a.constant[0] = XPoly{{2, Rational(-1)}};
  for (int order = 1; order <= 2; ++order) {
    auto [bl, c] = lowtemp::assemble_w_exponent(order);
    a.beta_linear += bl;
    a.constant += c;
  }
  return a;
}

std::array<Rational, 3> log_partition_constant() {
  // log of <exp(sum_{k>=1} g^k C_k(x))> over the Gaussian weight of order 0
  const GPoly w = perturbative_part(amplitude_exponent().constant);
  const XSeries e = exp_series(to_series(w));
  RSeries averaged(GPoly::kMaxOrder);
  for (int k = 0; k <= GPoly::kMaxOrder; ++k) averaged[k] = gaussian_average(e[k]);
  RSeries shifted = averaged;
  shifted[0] = 0;
  const RSeries logz = log1p_series(shifted);
  return {logz[0], logz[1], logz[2]};
}

EnergySeries energy_series() {
  const AmplitudeExponent a = amplitude_exponent();
  EnergySeries e;
  for (int k = 0; k <= 2; ++k) {
    const XPoly& bl = a.beta_linear[k];
    if (bl.degree() > 0) throw NumericError("energy_series: beta-linear part depends on x at order " + std::to_string(k));
    e.coefficients[k] = -bl.coefficient(0);
  }
  return e;
}

GPoly rho_diagonal_series() {
  const AmplitudeExponent a = amplitude_exponent();
  const auto logz_constant = log_partition_constant();
  GPoly rho;
  for (int k = 0; k <= 2; ++k) {
    // beta-linear parts of the amplitude and of log Z; the x-integral of the
    // amplitude only sees x-independent B terms, so both are the same polynomial
    const XPoly& amp_beta = a.beta_linear[k];
    if (amp_beta.degree() > 0)
      throw NumericError("rho_diagonal_series: x-dependent beta-linear term at order " + std::to_string(k));
    const XPoly logz_beta = XPoly::constant(amp_beta.coefficient(0));
    const XPoly residual = amp_beta - logz_beta;
    if (!residual.is_zero())
      throw NumericError("rho_diagonal_series: beta-divergent terms do not cancel at order " + std::to_string(k));
    rho[k] = a.constant[k] - XPoly::constant(logz_constant[k]);
  }
  return rho;
}

GPoly psi_exponent_series() {
  GPoly rho = rho_diagonal_series();
  for (auto& p : rho.orders) p *= Rational(1, 2);
  return rho;
}

GPoly psi_pert_series() {
  const GPoly w = perturbative_part(psi_exponent_series());
  return from_series(exp_series(to_series(w)));
}

std::pair<Rational, Rational> check_normalization(const GPoly& prefactor) {
  const XSeries p = to_series(prefactor);
  const XSeries sq = p * p;
  return {gaussian_average(sq[1]), gaussian_average(sq[2])};
}

Rational gaussian_average(int power) {
  if (power < 0) throw std::invalid_argument("gaussian_average: negative power");
  if (power % 2 == 1) return 0;
  const int k = power / 2;
  return Rational(double_factorial_odd(k)) / pow(Rational(2), k);
}

Rational gaussian_average(const XPoly& p) {
  Rational s = 0;
  for (const auto& [power, c] : p.terms()) s += c * gaussian_average(power);
  return s;
}

double gaussian_moment(int k, double a) {
  if (k < 0 || !(a > 0.0)) throw std::invalid_argument("gaussian_moment: need k >= 0 and a > 0");
  return to_double(Rational(double_factorial_odd(k))) / std::pow(2.0 * a, k) * std::sqrt(std::numbers::pi / a);
}

double evaluate_psi(const GPoly& prefactor, double x, const OscillatorParams& p) {
  p.validate();
  const double len = p.length_scale();
  const double xt = x / len;
  const double gt = p.reduced_coupling();
  const double gauss = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xt * xt);
  return gauss * prefactor.evaluate(xt, gt) / std::sqrt(len);
}

void write_csv(std::ostream& os, const GPoly& series) {
  os << "g_order,x_power,numerator,denominator,hbar_exp,mass_exp,omega_exp\n";
  for (int k = 0; k <= GPoly::kMaxOrder; ++k) {
    for (const auto& [power, c] : series[k].terms()) {
      const Dim d = series_dimension(k, power);
      os << k << ',' << power << ',' << numerator_of(c) << ',' << denominator_of(c) << ',' << d.hbar << ','
         << d.mass << ',' << d.omega << '\n';
    }
  }
}

}  // namespace vpt::series
