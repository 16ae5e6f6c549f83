#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vpt/grid.hpp"

namespace vpt::analysis {

/// D = 2 * int_0^inf (a - b)^2 dx by the trapezoidal rule on a's grid (x >= 0),
/// with b resampled by cubic interpolation. Both must be normalized.
/// Throws std::invalid_argument when b is not normalized or either function
/// carries more than `leak_tol` of its norm outside the common range.
double mean_square_deviation(const GridFunction& a, const GridFunction& b, double leak_tol = 1e-12);

/// Fixed-format CSV: header line, then rows in 12-significant-digit scientific notation.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

  static std::string format(double v);

 private:
  std::ostream& os_;
  std::size_t width_;
};

}  // namespace vpt::analysis
