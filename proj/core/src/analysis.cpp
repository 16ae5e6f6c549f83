#include "vpt/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace vpt::analysis {

namespace {

// Norm (over x >= 0) of f beyond |x| > cut.
double tail_mass(const GridFunction& f, double cut) {
  double s = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const double x0 = f.x[i - 1], x1 = f.x[i];
    if (std::max(std::abs(x0), std::abs(x1)) <= cut) continue;
    s += 0.5 * (x1 - x0) * (f.values[i - 1] * f.values[i - 1] + f.values[i] * f.values[i]);
  }
  return f.half_line ? s : 0.5 * s;
}

}  // namespace

double mean_square_deviation(const GridFunction& a, const GridFunction& b, double leak_tol) {
  if (!a.normalized || !b.normalized) throw std::invalid_argument("mean_square_deviation: inputs must be normalized");
  if (a.size() < 4 || b.size() < 4) throw std::invalid_argument("mean_square_deviation: grids too small");
  const GridFunction ah = a.positive_half();
  const double x_hi = std::min(ah.x_max(), b.half_line ? b.x_max() : std::min(-b.x_min(), b.x_max()));
  if (tail_mass(ah, x_hi) > leak_tol || tail_mass(b, x_hi) > leak_tol)
    throw std::invalid_argument("mean_square_deviation: grids do not cover the support of both functions");

  std::vector<double> xs, d2;
  for (std::size_t i = 0; i < ah.size(); ++i) {
    if (ah.x[i] > x_hi * (1.0 + 1e-12)) break;
    const double d = ah.values[i] - b.value_at(ah.x[i]);
    xs.push_back(ah.x[i]);
    d2.push_back(d * d);
  }
  if (xs.size() < 2) throw std::invalid_argument("mean_square_deviation: empty overlap");
  return 2.0 * trapezoid(xs, d2);
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns) : os_(os), width_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::invalid_argument("CsvWriter: row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format(values[i]);
  os_ << '\n';
}

std::string CsvWriter::format(double v) {
  char buf[40];
  if (v == 0.0) v = 0.0;  // no "-0"
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

}  // namespace vpt::analysis
