#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vpt/analysis.hpp"
#include "vpt/oracle.hpp"
#include "vpt/variational.hpp"

using namespace vpt;
using namespace vpt::analysis;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

GridFunction gaussian(double a, double lo, double hi, int n) {
  GridFunction f;
  f.x = uniform_grid(lo, hi, n);
  f.half_line = lo >= 0.0;
  for (double x : f.x) f.values.push_back(std::pow(a / std::numbers::pi, 0.25) * std::exp(-0.5 * a * x * x));
  f.normalize();
  return f;
}

}  // namespace

TEST_CASE("mean square deviation of Gaussians", "[analysis]") {
  const GridFunction a = gaussian(1.0, 0.0, 10.0, 4001);
  CHECK(mean_square_deviation(a, a) == 0.0);
  for (double b : {0.8, 1.5}) {
    const GridFunction f = gaussian(b, -10.0, 10.0, 8001);
    // 2 - 2 <a|b>, overlap (4ab)^(1/4) / sqrt(a + b)
    const double expected = 2.0 - 2.0 * std::pow(4.0 * b, 0.25) / std::sqrt(1.0 + b);
    CHECK_THAT(mean_square_deviation(a, f), WithinRel(expected, 1e-6));
    CHECK_THAT(mean_square_deviation(a, f), WithinRel(mean_square_deviation(gaussian(b, 0.0, 10.0, 4001), a), 1e-6));
  }
}

TEST_CASE("mean square deviation input checks", "[analysis]") {
  const GridFunction a = gaussian(1.0, 0.0, 10.0, 2001);
  GridFunction raw = a;
  for (double& v : raw.values) v *= 2.0;
  raw.normalized = false;
  CHECK_THROWS_AS(mean_square_deviation(a, raw), std::invalid_argument);
  CHECK_THROWS_AS(mean_square_deviation(raw, a), std::invalid_argument);
  const GridFunction wide = gaussian(0.05, 0.0, 40.0, 8001);
  CHECK_THROWS_AS(mean_square_deviation(a, wide), std::invalid_argument);
  CHECK_THROWS_AS(mean_square_deviation(gaussian(1.0, 0.0, 3.0, 301), a), std::invalid_argument);
}

TEST_CASE("deviation is insensitive to the x grid", "[analysis]") {
  OscillatorParams p;
  p.g = 0.5;
  const auto exact = oracle::ground_state(p);
  const auto coarse = variational::psi_variational(2, 0.5, uniform_grid(0.0, 8.0, 2001));
  const auto fine = variational::psi_variational(2, 0.5, uniform_grid(0.0, 10.0, 5001));
  const double d_coarse = mean_square_deviation(coarse, exact.psi);
  const double d_fine = mean_square_deviation(fine, exact.psi);
  CHECK_THAT(d_coarse, WithinRel(d_fine, 1e-2));
}

TEST_CASE("forcing the lower branch at order 1 ruins the wave function", "[analysis][variational]") {
  OscillatorParams p;
  p.g = 0.5;
  const auto exact = oracle::ground_state(p);
  const auto grid = uniform_grid(0.0, 8.0, 2001);
  variational::SolverPolicy lower;
  lower.seed = variational::SeedRule::Smallest;
  const auto upper_psi = variational::psi_variational(1, 0.5, grid);
  const auto lower_psi = variational::psi_variational(1, 0.5, grid, lower);
  // the tail dies off far faster than any Gaussian instead of blowing up
  CHECK(lower_psi.value_at(2.0) < 1e-5 * upper_psi.value_at(2.0));
  CHECK(mean_square_deviation(lower_psi, exact.psi) > 1e3 * mean_square_deviation(upper_psi, exact.psi));
}

TEST_CASE("CSV formatting", "[analysis]") {
  CHECK(CsvWriter::format(0.5) == "5.00000000000e-01");
  CHECK(CsvWriter::format(-0.0) == "0.00000000000e+00");
  CHECK(CsvWriter::format(1.0 / 3.0) == "3.33333333333e-01");
  CHECK(CsvWriter::format(-12345.678) == "-1.23456780000e+04");
  std::ostringstream os;
  CsvWriter w(os, {"a", "b"});
  w.row({1.0, 2.0});
  CHECK(os.str() == "a,b\n1.00000000000e+00,2.00000000000e+00\n");
  CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);
}
