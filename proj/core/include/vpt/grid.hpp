#pragma once

#include <span>
#include <vector>

namespace vpt {

/// Evenly spaced points lo, ..., hi (n >= 2).
std::vector<double> uniform_grid(double lo, double hi, int n);

double trapezoid(std::span<const double> x, std::span<const double> y);

/// A wave function sampled on a uniform grid. With `half_line` set the samples
/// cover x >= 0 and the function is understood as its even extension.
struct GridFunction {
  std::vector<double> x;
  std::vector<double> values;
  bool half_line = false;
  bool normalized = false;

  std::size_t size() const { return x.size(); }
  double spacing() const;
  double x_min() const { return x.front(); }
  double x_max() const { return x.back(); }

  /// Integral of psi^2 over the whole line by the trapezoidal rule.
  double norm_squared() const;
  void normalize();
  double max_abs() const;

  /// Cubic Lagrange interpolation; even extension for half-line data. Points
  /// outside the sampled range return 0.
  double value_at(double xq) const;

  /// Samples with x >= 0, as a half-line function.
  GridFunction positive_half() const;
};

}  // namespace vpt
