#include "vpt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vpt/errors.hpp"

namespace vpt::oracle {

double default_x_max(const OscillatorParams& p) {
  p.validate();
  const double x = 8.0 * p.length_scale();
  if (p.reduced_coupling() <= 50.0) return x;
  return 8.0 * std::pow(p.hbar * p.hbar / (2.0 * p.mass * p.g), 1.0 / 6.0);
}

int sturm_count(std::span<const double> diag, std::span<const double> off, double lambda) {
  // negative pivots of the LDL^T factorization of T - lambda I
  int count = 0;
  double d = diag[0] - lambda;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0;; ++i) {
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
    if (i + 1 == diag.size()) break;
    d = diag[i + 1] - lambda - off[i] * off[i] / d;
  }
  return count;
}

double lowest_eigenvalue(std::span<const double> diag, std::span<const double> off, double rel_tol) {
  if (diag.empty() || off.size() + 1 != diag.size()) throw std::invalid_argument("lowest_eigenvalue: bad sizes");
  // Gershgorin bracket
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i < off.size() ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off, mid) >= 1)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> inverse_iteration(std::span<const double> diag, std::span<const double> off, double lambda,
                                      int max_sweeps) {
  const std::size_t n = diag.size();
  // LU of T - lambda I with partial pivoting (tridiagonal, fill of one superdiagonal)
  std::vector<double> a(n), b(n), c(n, 0.0), l(n, 0.0);
  std::vector<char> swapped(n, 0);
  const double eps = std::numeric_limits<double>::epsilon();
  double scale = 0.0;
  for (double v : diag) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = diag[i] - lambda;
    if (i + 1 < n) b[i] = off[i];
  }
  // rows: a = diagonal, b = first superdiagonal, c = second superdiagonal
  std::vector<double> sub(off.begin(), off.end());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(sub[i]) > std::abs(a[i])) {
      swapped[i] = 1;
      std::swap(a[i], sub[i]);
      std::swap(b[i], a[i + 1]);
      if (i + 2 < n) std::swap(c[i], b[i + 1]);
    }
    if (a[i] == 0.0) a[i] = eps * scale;
    l[i] = sub[i] / a[i];
    a[i + 1] -= l[i] * b[i];
    if (i + 2 < n) b[i + 1] -= l[i] * c[i];
  }
  if (a[n - 1] == 0.0) a[n - 1] = eps * scale;

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> prev;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    prev = v;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(v[i], v[i + 1]);
      v[i + 1] -= l[i] * v[i];
    }
    for (std::size_t k = n; k-- > 0;) {
      double s = v[k];
      if (k + 1 < n) s -= b[k] * v[k + 1];
      if (k + 2 < n) s -= c[k] * v[k + 2];
      v[k] = s / a[k];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (!std::isfinite(norm) || norm == 0.0) throw NumericError("inverse_iteration: breakdown");
    double sum = 0.0;
    for (double x : v) sum += x;
    const double sign = sum < 0.0 ? -1.0 : 1.0;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] *= sign / norm;
      change = std::max(change, std::abs(v[i] - prev[i]));
    }
    if (change < 1e-13) return v;
  }
  throw NumericError("inverse_iteration: no convergence after " + std::to_string(max_sweeps) + " sweeps");
}

namespace {

void check_box(const OscillatorParams& p, double x_max, int n) {
  p.validate();
  if (n < 200) throw std::invalid_argument("ground_state: need at least 200 points");
  if (!(x_max > 0.0)) throw std::invalid_argument("ground_state: x_max must be positive");
  const double harmonic = p.mass * p.omega * x_max * x_max / (2.0 * p.hbar);
  const double quartic = std::sqrt(2.0 * p.mass * p.g) * x_max * x_max * x_max / (3.0 * p.hbar);
  if (std::max(harmonic, quartic) < -std::log(1e-12))
    throw std::invalid_argument("ground_state: x_max too small for the decay of the ground state");
}

}  // namespace

EigenResult ground_state_single(const OscillatorParams& p, double x_max, int n) {
  check_box(p, x_max, n);
  const std::vector<double> x = uniform_grid(-x_max, x_max, n);
  const double h = x[1] - x[0];
  const std::size_t m = static_cast<std::size_t>(n) - 2;
  const double kin = p.hbar * p.hbar / (p.mass * h * h);
  std::vector<double> diag(m), off(m - 1, -0.5 * kin);
  for (std::size_t i = 0; i < m; ++i) diag[i] = kin + p.potential(x[i + 1]);

  EigenResult r;
  r.energy = lowest_eigenvalue(diag, off);
  const std::vector<double> v = inverse_iteration(diag, off, r.energy);
  r.psi.x = x;
  r.psi.values.assign(static_cast<std::size_t>(n), 0.0);
  std::copy(v.begin(), v.end(), r.psi.values.begin() + 1);
  r.psi.normalize();
  r.x_max = x_max;
  r.points = n;

  const double peak = r.psi.max_abs();
  const double edge = std::max(std::abs(r.psi.values[1]), std::abs(r.psi.values[m]));
  if (edge > 1e-10 * peak) throw NumericError("ground_state: wave function leaks to the box walls");
  for (std::size_t i = 1; i <= m; ++i)
    if (!(r.psi.values[i] > 0.0) && std::abs(x[i]) < 0.5 * x_max)
      throw NumericError("ground_state: eigenvector has a node");
  return r;
}

EigenResult ground_state(const OscillatorParams& p, double x_max, int n) {
  const EigenResult coarse = ground_state_single(p, x_max, n);
  const EigenResult fine = ground_state_single(p, x_max, 2 * n - 1);
  EigenResult r = coarse;
  r.energy = (4.0 * fine.energy - coarse.energy) / 3.0;
  for (std::size_t i = 0; i < r.psi.values.size(); ++i)
    r.psi.values[i] = (4.0 * fine.psi.values[2 * i] - coarse.psi.values[i]) / 3.0;
  // the far tail of the extrapolated vector may dip below zero by rounding
  for (auto& v : r.psi.values) v = std::max(v, 0.0);
  r.psi.normalize();
  return r;
}

EigenResult ground_state(const OscillatorParams& p) { return ground_state(p, default_x_max(p)); }

double VirialTerms::relative_residual() const { return std::abs(2.0 * kinetic - x_dv) / std::abs(x_dv); }

VirialTerms virial_terms(const GridFunction& psi, const OscillatorParams& p) {
  const std::size_t n = psi.size();
  if (n < 3) throw std::invalid_argument("virial_terms: too few samples");
  const double h = psi.spacing();
  std::vector<double> dpsi2(n), xdv(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d;
    if (i == 0)
      d = (psi.values[1] - psi.values[0]) / h;
    else if (i + 1 == n)
      d = (psi.values[n - 1] - psi.values[n - 2]) / h;
    else
      d = (psi.values[i + 1] - psi.values[i - 1]) / (2.0 * h);
    dpsi2[i] = d * d;
    const double x = psi.x[i];
    xdv[i] = psi.values[i] * psi.values[i] * x * (p.mass * p.omega * p.omega * x + 4.0 * p.g * x * x * x);
  }
  const double f = psi.half_line ? 2.0 : 1.0;
  VirialTerms t;
  t.kinetic = f * 0.5 * p.hbar * p.hbar / p.mass * trapezoid(psi.x, dpsi2);
  t.x_dv = f * trapezoid(psi.x, xdv);
  return t;
}

}  // namespace vpt::oracle
