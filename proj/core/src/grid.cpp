#include "vpt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vpt/params.hpp"

namespace vpt {

double OscillatorParams::length_scale() const { return std::sqrt(hbar / (mass * omega)); }

double OscillatorParams::reduced_coupling() const { return g * hbar / (mass * mass * omega * omega * omega); }

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw std::invalid_argument("uniform_grid: need n >= 2 and hi > lo");
  std::vector<double> x(static_cast<std::size_t>(n));
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) x[i] = lo + h * i;
  x.back() = hi;
  return x;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

double GridFunction::spacing() const {
  if (x.size() < 2) throw std::invalid_argument("GridFunction: fewer than two samples");
  return (x.back() - x.front()) / static_cast<double>(x.size() - 1);
}

double GridFunction::norm_squared() const {
  std::vector<double> sq(values.size());
  std::transform(values.begin(), values.end(), sq.begin(), [](double v) { return v * v; });
  const double s = trapezoid(x, sq);
  return half_line ? 2.0 * s : s;
}

void GridFunction::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw std::domain_error("GridFunction: cannot normalize");
  const double f = 1.0 / std::sqrt(n2);
  for (auto& v : values) v *= f;
  normalized = true;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::value_at(double xq) const {
  if (half_line) xq = std::abs(xq);
  const double lo = x.front();
  const double hi = x.back();
  const double tol = 1e-12 * std::max(1.0, std::abs(hi - lo));
  if (xq < lo - tol || xq > hi + tol) return 0.0;
  const std::size_t n = x.size();
  if (n < 4) throw std::invalid_argument("GridFunction: cubic interpolation needs four samples");
  const double h = spacing();
  const double t = (xq - lo) / h;
  auto i = static_cast<long>(std::floor(t));
  const long exact = std::lround(t);
  if (std::abs(t - static_cast<double>(exact)) < 1e-9) return values[static_cast<std::size_t>(std::clamp(exact, 0L, static_cast<long>(n) - 1))];
  // stencil i-1 .. i+2, shifted inward at the ends
  long first = std::clamp(i - 1, 0L, static_cast<long>(n) - 4);
  double s = 0.0;
  for (long a = first; a < first + 4; ++a) {
    double w = 1.0;
    for (long b = first; b < first + 4; ++b)
      if (b != a) w *= (t - static_cast<double>(b)) / static_cast<double>(a - b);
    s += w * values[static_cast<std::size_t>(a)];
  }
  return s;
}

GridFunction GridFunction::positive_half() const {
  if (half_line) return *this;
  GridFunction out;
  out.half_line = true;
  out.normalized = normalized;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= -1e-12) {
      out.x.push_back(std::max(0.0, x[i]));
      out.values.push_back(values[i]);
    }
  }
  return out;
}

}  // namespace vpt
