#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "reference_tables.hpp"
#include "vpt/errors.hpp"
#include "vpt/series.hpp"
#include "vpt/variational.hpp"

using namespace vpt;
using namespace vpt::variational;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

using Key = std::tuple<int, int, int, int>;  // x, Omega, omega, g

std::map<Key, Rational> by_key(const VariationalSeries& s) {
  std::map<Key, Rational> m;
  for (const auto& t : s.monomials()) m[{t.x_power, t.trial_power, t.omega_power, t.g_power}] += t.coefficient;
  return m;
}

OscillatorParams natural(double g) {
  OscillatorParams p;
  p.g = g;
  return p;
}

int branch_switches(const OmegaProfile& prof) {
  int n = 0;
  for (std::size_t i = 1; i < prof.branch.size(); ++i) n += prof.branch[i] != prof.branch[i - 1];
  return n;
}

}  // namespace

TEST_CASE("resummed exponent matches the reference monomials", "[variational][reference]") {
  for (int order = 1; order <= 2; ++order) {
    const VariationalSeries s = resum(order);
    CHECK(s.log_coefficient() == Rational(1, 4));
    auto derived = by_key(s);
    std::size_t expected_count = 0;
    for (const auto& ref : testing::reference_resummed()) {
      if (ref.order != order) continue;
      ++expected_count;
      const Key k{ref.x_power, ref.trial_power, ref.omega_power, ref.g_power};
      INFO("order " << order << " x^" << ref.x_power << " Omega^" << ref.trial_power << " omega^" << ref.omega_power
                    << " g^" << ref.g_power << ": derived " << to_string(derived[k]) << ", printed "
                    << to_string(ref.printed));
      CHECK(derived[k] == ref.expected());
      if (ref.corrected) CHECK(derived[k] != ref.printed);
    }
    std::erase_if(derived, [](const auto& kv) { return kv.second == 0; });
    CHECK(derived.size() == expected_count);
  }
}

TEST_CASE("resummed exponent reduces to the series at Omega = omega", "[variational]") {
  const GPoly w = series::psi_exponent_series();
  for (int order = 1; order <= 2; ++order) {
    const GPoly fixed = resum(order).at_fixed_point();
    for (int k = 0; k <= order; ++k) CHECK(fixed[k] == w[k]);
    for (int k = order + 1; k <= GPoly::kMaxOrder; ++k) CHECK(fixed[k].is_zero());
  }
}

TEST_CASE("Omega derivatives agree with finite differences", "[variational]") {
  OscillatorParams p;
  p.hbar = 1.3;
  p.mass = 0.7;
  p.omega = 1.9;
  p.g = 0.4;
  for (int order = 1; order <= 2; ++order) {
    const VariationalSeries s = resum(order);
    for (double x : {0.0, 0.4, 1.7}) {
      for (double trial : {0.8, 2.5, 6.0}) {
        for (int n = 1; n <= 3; ++n) {
          const double h = 1e-6 * trial;
          const double fd = (s.derivative(n - 1, x, trial + h, p) - s.derivative(n - 1, x, trial - h, p)) / (2 * h);
          INFO("order " << order << " n " << n << " x " << x << " Omega " << trial);
          CHECK_THAT(s.derivative(n, x, trial, p), WithinRel(fd, 1e-6) || WithinAbs(fd, 1e-8));
        }
      }
    }
  }
}

TEST_CASE("invalid variational input", "[variational]") {
  CHECK_THROWS_AS(resum(0), std::invalid_argument);
  CHECK_THROWS_AS(resum(3), std::invalid_argument);
  const VariationalSeries s = resum(1);
  CHECK_THROWS_AS(s.derivative(0, 1.0, 0.0, natural(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(s.derivative(1, 1.0, -1.0, natural(0.5)), std::invalid_argument);

  SolverPolicy bad;
  bad.omega_min = 2.0;
  bad.omega_max = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = SolverPolicy{};
  bad.scan_points = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  const std::vector<double> empty;
  const std::vector<double> decreasing{1.0, 0.5};
  const std::vector<double> negative{-1.0, 0.0, 1.0};
  CHECK_THROWS_AS(solve_omega_profile(1, 0.5, empty), std::invalid_argument);
  CHECK_THROWS_AS(solve_omega_profile(1, 0.5, decreasing), std::invalid_argument);
  CHECK_THROWS_AS(solve_variational(1, negative, natural(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(solve_omega_profile(1, -0.5, std::vector<double>{0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("exponent falls off at large trial frequency", "[variational]") {
  for (int order = 1; order <= 2; ++order) {
    const VariationalSeries s = resum(order);
    double previous = s.value(1.0, 10.0, natural(0.5));
    for (double trial : {1e2, 1e3, 1e4}) {
      const double w = s.value(1.0, trial, natural(0.5));
      CHECK(w < previous);
      previous = w;
    }
    CHECK(previous < -1e3);
  }
}

TEST_CASE("free oscillator roots", "[variational]") {
  const VariationalSeries s1 = resum(1);
  const SolverPolicy policy;
  const auto r = derivative_roots(s1, 1, 2.0, natural(0.0), policy);
  REQUIRE(r.size() == 2);
  CHECK_THAT(r[0], WithinRel(0.25, 1e-10));
  CHECK_THAT(r[1], WithinRel(1.0, 1e-10));

  // order 2: Omega = omega is a double root, the other one sits at 4 / (3 x^2)
  const VariationalSeries s2 = resum(2);
  const auto r2 = derivative_roots(s2, 1, 2.0, natural(0.0), policy);
  REQUIRE(r2.size() == 2);
  CHECK_THAT(r2[0], WithinRel(1.0 / 3.0, 1e-8));
  CHECK_THAT(r2[1], WithinRel(1.0, 1e-10));
}

TEST_CASE("g = 0 reproduces the harmonic ground state", "[variational]") {
  const std::vector<double> grid = uniform_grid(0.0, 8.0, 801);
  for (int order = 1; order <= 2; ++order) {
    const VariationalResult res = solve_variational(order, grid, natural(0.0));
    for (double w : res.profile.omega) REQUIRE_THAT(w, WithinRel(1.0, 1e-10));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double gauss = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * grid[i] * grid[i]);
      CHECK_THAT(res.psi.values[i], WithinAbs(gauss, 1e-10));
    }
  }
}

TEST_CASE("selected roots solve their equation", "[variational]") {
  const std::vector<double> grid = uniform_grid(0.0, 4.0, 81);
  for (int order = 1; order <= 2; ++order) {
    const VariationalSeries s = resum(order);
    const OscillatorParams p = natural(0.5);
    const OmegaProfile prof = solve_omega_profile(order, grid, p);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = prof.omega[i];
      const int n = prof.kind[i] == RootKind::Extremum ? 1 : 2;
      const double scale = std::abs(s.derivative(n + 1, grid[i], w, p)) * w;
      INFO("order " << order << " x " << grid[i]);
      CHECK(std::abs(s.derivative(n, grid[i], w, p)) <= 1e-10 * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("profiles at g = 1/2", "[variational]") {
  const std::vector<double> grid = uniform_grid(0.0, 4.0, 161);
  const OscillatorParams p = natural(0.5);

  SECTION("order 1 uses extrema throughout") {
    const VariationalResult res = solve_variational(1, grid, p);
    for (auto k : res.profile.kind) CHECK(k == RootKind::Extremum);
    CHECK(branch_switches(res.profile) == 1);
    CHECK_THAT(res.psi.norm_squared(), WithinRel(1.0, 1e-12));
  }
  SECTION("order 2 falls back to turning points on the whole grid") {
    const VariationalResult res = solve_variational(2, grid, p);
    for (auto k : res.profile.kind) CHECK(k == RootKind::TurningPoint);
    for (const auto& c : res.profile.candidates) CHECK(c.roots.size() == 2);
    CHECK(branch_switches(res.profile) == 1);
    CHECK_THAT(res.psi.norm_squared(), WithinRel(1.0, 1e-12));
    for (double v : res.psi.values) CHECK(v > 0.0);
    CHECK(res.psi.half_line);
  }
  SECTION("no jumps away from the branch switch") {
    for (int order = 1; order <= 2; ++order) {
      const OmegaProfile prof = solve_omega_profile(order, grid, p);
      std::vector<double> jump(grid.size(), 0.0);
      for (std::size_t i = 1; i < grid.size(); ++i) jump[i] = std::abs(prof.omega[i] - prof.omega[i - 1]);
      for (std::size_t i = 1; i < grid.size(); ++i) {
        if (prof.branch[i] != prof.branch[i - 1]) continue;
        const std::size_t lo = std::max<std::size_t>(1, i > 5 ? i - 5 : 1), hi = std::min(grid.size() - 1, i + 5);
        std::vector<double> window(jump.begin() + lo, jump.begin() + hi + 1);
        std::nth_element(window.begin(), window.begin() + window.size() / 2, window.end());
        INFO("order " << order << " x " << grid[i]);
        CHECK(jump[i] <= 5.0 * window[window.size() / 2] + 1e-12);
      }
    }
  }
  SECTION("largest root is taken at the far end") {
    for (int order = 1; order <= 2; ++order) {
      const OmegaProfile prof = solve_omega_profile(order, grid, p);
      const auto& last = prof.candidates.back().roots;
      CHECK(prof.omega.back() == last.back());
    }
  }
  SECTION("smallest seed changes the far end") {
    SolverPolicy policy;
    policy.seed = SeedRule::Smallest;
    const OmegaProfile prof = solve_omega_profile(1, grid, p, policy);
    CHECK(prof.omega.back() == prof.candidates.back().roots.front());
    CHECK(prof.omega.back() < solve_omega_profile(1, grid, p).omega.back());
  }
  SECTION("per-point fallback at order 2 blows up") {
    SolverPolicy policy;
    policy.fallback = Fallback::Pointwise;
    CHECK_THROWS_AS(solve_variational(2, grid, p, policy), NumericError);
  }
  SECTION("an empty bracket leaves points without roots") {
    SolverPolicy policy;
    policy.omega_min = 10.0;
    policy.omega_max = 20.0;
    CHECK_THROWS_AS(solve_omega_profile(1, grid, p, policy), NumericError);
  }
}

TEST_CASE("branch selection minimises total variation", "[variational]") {
  const std::vector<double> grid{0.0, 1.0, 2.0, 3.0};
  std::vector<PointRoots> c(4);
  c[0].roots = {1.0, 5.0};
  c[1].roots = {1.1, 4.0};
  c[2].roots = {0.9, 1.3};
  c[3].roots = {1.25, 3.0};
  const OmegaProfile largest = select_branches(grid, c, SeedRule::Largest);
  CHECK(largest.omega == std::vector<double>{1.0, 1.1, 1.3, 3.0});
  CHECK(largest.branch == std::vector<int>{0, 0, 1, 1});
  const OmegaProfile smallest = select_branches(grid, c, SeedRule::Smallest);
  CHECK(smallest.omega == std::vector<double>{1.0, 1.1, 1.3, 1.25});
  c[3].roots = {0.95, 3.0};
  CHECK(select_branches(grid, c, SeedRule::Smallest).omega == std::vector<double>{1.0, 1.1, 0.9, 0.95});

  c[2].roots.clear();
  CHECK_THROWS_AS(select_branches(grid, c, SeedRule::Largest), NumericError);
}
