// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/pairing.hpp"
#include "oracles/quadrature.hpp"
#include "reference_tables.hpp"
#include "vpt/analysis.hpp"
#include "vpt/lowtemp.hpp"
#include "vpt/oracle.hpp"
#include "vpt/series.hpp"
#include "vpt/variational.hpp"
#include "vpt/wick.hpp"

using namespace vpt;

namespace {

struct Outcome {
  std::vector<std::string> failed;
  std::ostringstream detail;

  bool pass() const { return failed.empty(); }
  void require(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
  std::string summary() const {
    std::string s = detail.str();
    while (!s.empty() && (s.back() == ' ' || s.back() == ';')) s.pop_back();
    for (std::size_t i = 0; i < failed.size(); ++i) s += (i ? "; " : " | failed: ") + failed[i];
    return s;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

OscillatorParams natural(double g) {
  OscillatorParams p;
  p.g = g;
  return p;
}

bool within_rel(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

void wick_goldens(Outcome& o) {
  const auto t0 = Clock::now();
  const wick::WickSum s = wick::wick_reduce({{1, 4}, {2, 4}});
  const wick::WickSum ref = wick::parse_sum(testing::reference_x4x4(), {1, 2}, {4, 4});
  o.require(s.size() == 14, "14 terms");
  o.require(s == ref, "terms and multiplicities");
  o.require(s.multiplicity_sum() == 764, "multiplicity sum 764");
  int mismatches = 0, cases = 0;
  for (int n = 0; n <= 8; ++n) {
    for (int m = 0; n + m <= 8; ++m) {
      const std::vector<std::pair<int, int>> e =
          m == 0 ? std::vector<std::pair<int, int>>{{1, n}} : std::vector<std::pair<int, int>>{{1, n}, {2, m}};
      mismatches += !(wick::wick_reduce(e) == testing::pairing_oracle(e));
      ++cases;
    }
  }
  o.require(mismatches == 0, "pairing oracle");
  const double t = seconds_since(t0);
  o.require(t < 1.0, "runtime < 1 s");
  o.detail << s.size() << " terms, sum " << s.multiplicity_sum() << ", oracle " << cases - mismatches << "/" << cases
           << " exponent pairs, " << t << " s";
}

void cumulant_cancellation(Outcome& o) {
  const wick::WickSum c = wick::connected_w_terms(2);
  int disconnected = 0;
  for (const auto& t : c.terms()) disconnected += !t.is_connected({1, 2});
  o.require(disconnected == 0, "no disconnected terms");
  std::vector<std::int64_t> mult;
  const wick::WickSum ref = wick::parse_sum(testing::reference_x4x4(), {1, 2}, {4, 4});
  int matched = 0;
  for (const auto& t : ref.terms()) {
    if (!t.is_connected({1, 2})) continue;
    mult.push_back(c.multiplicity_of(t));
    matched += c.multiplicity_of(t) == t.multiplicity;
  }
  std::vector<std::int64_t> sorted = mult;
  std::sort(sorted.begin(), sorted.end());
  o.require(c.size() == 8 && matched == 8, "connected subset of <x^4 x^4>");
  o.require(sorted == std::vector<std::int64_t>{16, 24, 72, 72, 96, 96, 144, 144}, "multiplicity set");
  const wick::WickSum printed = wick::parse_sum(testing::reference_connected_printed(), {1, 2}, {4, 4});
  bool halved = true;
  for (const auto& t : c.terms()) halved = halved && 2 * printed.multiplicity_of(t) == t.multiplicity;
  o.detail << c.size() << " connected terms, " << disconnected << " disconnected; flagged: printed multiplicities "
           << (halved ? "are exactly half the derived ones" : "differ irregularly");
}

void series_goldens(Outcome& o) {
  GPoly beta, constant;
  for (int order = 1; order <= 2; ++order) {
    auto [b, c] = lowtemp::assemble_w_exponent(order);
    beta += b;
    constant += c;
  }
  o.require(constant.coefficient(1, 0) == Rational(9, 8) && beta.coefficient(1, 0) == Rational(-3, 4) &&
                constant.coefficient(1, 2) == Rational(-3, 2) && constant.coefficient(1, 4) == Rational(-1, 2) &&
                constant[1].terms().size() == 3,
            "first-order exponent");
  const auto e = series::energy_series();
  o.require(e.coefficients[0] == Rational(1, 2) && e.coefficients[1] == Rational(3, 4) &&
                e.coefficients[2] == Rational(-21, 8),
            "energy coefficients");
  o.require(energy_dimension(1) == Dim{2, -2, -2} && energy_dimension(2) == Dim{3, -4, -5}, "energy units");
  int checked = 0, flagged = 0;
  bool all = true;
  const GPoly rho = series::rho_diagonal_series(), psi_exp = series::psi_exponent_series(),
              psi = series::psi_pert_series();
  for (const auto& ref : testing::reference_coefficients()) {
    const GPoly& table = ref.quantity == "amplitude"      ? constant
                         : ref.quantity == "rho_exponent" ? rho
                         : ref.quantity == "psi_exponent" ? psi_exp
                                                          : psi;
    const bool ok = table.coefficient(ref.g_order, ref.x_power) == ref.expected() &&
                    series_dimension(ref.g_order, ref.x_power) == ref.expected_dim();
    all = all && ok;
    ++checked;
    flagged += ref.flagged();
  }
  o.require(all, "coefficient tables");
  o.require(psi.coefficient(2, 0) == Rational(-1559, 512) && psi.coefficient(2, 8) == Rational(1, 32), "prefactor ends");
  o.detail << checked << " exact coefficients; scaled by g^2/2: " << to_string(2 * psi.coefficient(2, 0)) << " ... "
           << to_string(2 * psi.coefficient(2, 8)) << "; " << flagged << " printed entries corrected";
}

void normalization(Outcome& o) {
  const auto [r1, r2] = series::check_normalization(series::psi_pert_series());
  o.require(r1 == 0 && r2 == 0, "exact zeros");
  o.detail << "residuals " << to_string(r1) << ", " << to_string(r2);
}

void diagram_quadrature(Outcome& o) {
  double worst = 0.0, tail = 0.0;
  int count = 0;
  for (int order = 1; order <= 2; ++order) {
    const std::vector<int> vertices = order == 1 ? std::vector<int>{1} : std::vector<int>{1, 2};
    for (const auto& t : wick::connected_w_terms(order).terms()) {
      const auto exact = lowtemp::integrate_diagram(t, vertices);
      const auto fit = testing::diagram_large_beta_fit(t, vertices);
      const double c = exact.constant.evaluate(1.0), b = exact.beta_linear.evaluate(1.0);
      const double scale = std::max({std::abs(c), std::abs(b), 1.0});
      worst = std::max({worst, std::abs(fit.constant - c) / scale, std::abs(fit.slope - b) / scale});
      tail = std::max(tail, std::abs(fit.tail) * 400.0 * std::exp(-20.0) / scale);
      ++count;
    }
  }
  o.require(worst <= 1e-6, "relative 1e-6");
  o.detail << count << " diagrams, worst relative deviation " << worst << " (largest B^2 e^-B share at B = 20: "
           << tail << ")";
}

void oracle_convergence(Outcome& o) {
  const double e0 = oracle::ground_state(natural(0.0)).energy;
  o.require(std::abs(e0 - 0.5) <= 1e-8, "g = 0 energy");
  const auto es = series::energy_series();
  std::vector<double> lx, ly;
  for (double g : {0.001, 0.002, 0.004}) {
    const double diff = std::abs(oracle::ground_state(natural(g)).energy - es.evaluate(natural(g)));
    lx.push_back(std::log(g));
    ly.push_back(std::log(diff));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double power = sxy / sxx;
  o.require(power >= 2.7, "fitted power >= 2.7");
  o.detail << "E(0) - 1/2 = " << e0 - 0.5 << ", fitted power " << power;
}

void branch_structure(Outcome& o) {
  using namespace variational;
  const OscillatorParams p = natural(0.5);
  const SolverPolicy policy;
  const std::vector<double> xs = uniform_grid(0.0, 4.0, 4001);

  const VariationalSeries s1 = resum(1);
  std::vector<double> gap;
  for (double x : xs)
    if (derivative_roots(s1, 1, x, p, policy).empty()) gap.push_back(x);
  if (gap.empty()) {
    o.require(false, "order 1 extremum gap near 0.684..0.780");
    o.detail << "order 1: extrema at every x in [0, 4]";
  } else {
    const double lo = gap.front(), hi = gap.back();
    const bool contiguous = gap.size() == static_cast<std::size_t>(std::lround((hi - lo) / 0.001)) + 1;
    o.require(contiguous && std::abs(lo - 0.684) <= 0.005 && std::abs(hi - 0.780) <= 0.005,
              "order 1 gap edges 0.684, 0.780");
    o.detail << "order 1: no extrema on [" << lo << ", " << hi << "]";
  }

  const VariationalSeries s2 = resum(2);
  int with_extrema = 0, two_turning = 0;
  double first_extremum = -1.0;
  for (double x : xs) {
    if (!derivative_roots(s2, 1, x, p, policy).empty()) {
      if (with_extrema++ == 0) first_extremum = x;
    }
    two_turning += derivative_roots(s2, 2, x, p, policy).size() == 2;
  }
  o.require(with_extrema == 0, "order 2 has no extrema");
  o.require(two_turning == static_cast<int>(xs.size()), "two turning-point branches");

  SolverPolicy turning = policy;
  turning.turning_points_only = true;
  const OmegaProfile prof = solve_omega_profile(2, xs, p, turning);
  std::vector<double> switches;
  for (std::size_t i = 1; i < prof.branch.size(); ++i)
    if (prof.branch[i] != prof.branch[i - 1]) switches.push_back(0.5 * (xs[i] + xs[i - 1]));
  o.require(switches.size() == 1 && std::abs(switches[0] - 0.8) <= 0.05, "crossover at 0.8 +- 0.05");
  o.detail << "; order 2: extrema at " << with_extrema << "/" << xs.size() << " points";
  if (with_extrema) o.detail << " (first at x = " << first_extremum << ")";
  o.detail << ", two turning points at " << two_turning << "/" << xs.size() << ", crossover";
  for (double s : switches) o.detail << " " << s;
}

void headline_numbers(Outcome& o) {
  const auto t0 = Clock::now();
  const OscillatorParams p = natural(0.5);
  const std::vector<double> grid = uniform_grid(0.0, 8.0, 2001);
  const auto exact = oracle::ground_state(p);
  const double d1 = analysis::mean_square_deviation(variational::solve_variational(1, grid, p).psi, exact.psi);
  const double d2 = analysis::mean_square_deviation(variational::solve_variational(2, grid, p).psi, exact.psi);
  const double t = seconds_since(t0);
  o.require(within_rel(d1, 1.1e-5, 0.25), "D1 = 1.1e-5 +- 25%");
  o.require(within_rel(d2, 6.8e-7, 0.25), "D2 = 6.8e-7 +- 25%");
  o.require(std::abs(d2 / d1 - 0.063) <= 0.02, "ratio 0.063 +- 0.02");
  o.require(t < 30.0, "runtime < 30 s");
  o.detail << "D1 = " << d1 << ", D2 = " << d2 << ", ratio " << d2 / d1 << ", " << t << " s";
}

void coupling_sweep(Outcome& o) {
  for (double g : {0.1, 0.5, 50.0}) {
    const OscillatorParams p = natural(g);
    const std::vector<double> grid = uniform_grid(0.0, 8.0 * p.length_scale(), 2001);
    const auto exact = oracle::ground_state(p);
    const auto psi1 = variational::solve_variational(1, grid, p).psi;
    const auto psi2 = variational::solve_variational(2, grid, p).psi;
    const bool normalized = std::abs(psi2.norm_squared() - 1.0) <= 1e-10;
    bool node_free = true, vanished = false;
    for (double v : psi2.values) {
      node_free = node_free && v >= 0.0 && !(vanished && v > 0.0);
      vanished = vanished || v == 0.0;
    }
    bool even = psi2.half_line && psi2.x.front() == 0.0;
    for (const auto& m : variational::resum(2).monomials()) even = even && m.x_power % 2 == 0;
    const double d1 = analysis::mean_square_deviation(psi1, exact.psi);
    const double d2 = analysis::mean_square_deviation(psi2, exact.psi);
    std::ostringstream tag;
    tag << "g = " << g;
    o.require(normalized, tag.str() + " normalized");
    o.require(node_free, tag.str() + " node-free");
    o.require(even, tag.str() + " even");
    o.require(d2 < d1, tag.str() + " D2 < D1");
    o.detail << tag.str() << ": D1 = " << d1 << ", D2 = " << d2 << "; ";
  }
}

void fixed_point(Outcome& o) {
  const std::vector<double> grid = uniform_grid(0.0, 8.0, 2001);
  for (int order = 1; order <= 2; ++order) {
    const auto res = variational::solve_variational(order, grid, natural(0.0));
    double d_omega = 0.0, d_psi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      d_omega = std::max(d_omega, std::abs(res.profile.omega[i] - 1.0));
      const double gauss = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * grid[i] * grid[i]);
      d_psi = std::max(d_psi, std::abs(res.psi.values[i] - gauss));
    }
    o.require(d_omega <= 1e-10, "Omega = omega at order " + std::to_string(order));
    o.require(d_psi <= 1e-10, "Gaussian at order " + std::to_string(order));
    o.detail << "order " << order << ": max |Omega - 1| " << d_omega << ", max |psi - gauss| " << d_psi << "; ";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"Wick goldens", wick_goldens},
      {"cumulant cancellation", cumulant_cancellation},
      {"series goldens", series_goldens},
      {"normalization", normalization},
      {"diagram quadrature", diagram_quadrature},
      {"oracle convergence", oracle_convergence},
      {"branch structure", branch_structure},
      {"headline deviations", headline_numbers},
      {"coupling sweep", coupling_sweep},
      {"fixed point", fixed_point},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    o.detail.precision(4);
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass();
    std::printf("%s %2zu %s: %s\n", o.pass() ? "PASS" : "FAIL", i + 1, criteria[i].first, o.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
