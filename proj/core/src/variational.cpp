#include "vpt/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "vpt/errors.hpp"
#include "vpt/series.hpp"
#include "vpt/truncated_series.hpp"

namespace vpt::variational {

namespace {

double falling(int p, int n) {
  double f = 1.0;
  for (int k = 0; k < n; ++k) f *= static_cast<double>(p - k);
  return f;
}

double ipow(double base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

std::string format_x(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

VariationalSeries::VariationalSeries(int order, std::vector<Monomial> monomials, Rational log_coefficient)
    : order_(order), monomials_(std::move(monomials)), log_coefficient_(std::move(log_coefficient)) {
  for (const auto& m : monomials_) coefficients_.push_back(to_double(m.coefficient));
  log_coefficient_d_ = to_double(log_coefficient_);
}

double VariationalSeries::derivative(int n, double x, double trial, const OscillatorParams& p) const {
  if (!(trial > 0.0)) throw std::invalid_argument("VariationalSeries: trial frequency must be positive");
  if (n < 0) throw std::invalid_argument("VariationalSeries: negative derivative order");
  double s = 0.0;
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    const Monomial& m = monomials_[i];
    const double fall = falling(m.trial_power, n);
    if (fall == 0.0) continue;
    s += coefficients_[i] * fall * ipow(x, m.x_power) * ipow(trial, m.trial_power - n) *
         ipow(p.omega, m.omega_power) * ipow(p.g, m.g_power) * ipow(p.hbar, m.hbar_power) *
         ipow(p.mass, m.mass_power);
  }
  const double lc = log_coefficient_d_;
  if (n == 0) {
    s += lc * std::log(p.mass * trial / (p.hbar * std::numbers::pi));
  } else {
    // d^n/dOmega^n log Omega = (-1)^(n-1) (n-1)! / Omega^n
    double f = 1.0;
    for (int k = 1; k < n; ++k) f *= -static_cast<double>(k);
    s += lc * f / ipow(trial, n);
  }
  return s;
}

GPoly VariationalSeries::at_fixed_point() const {
  GPoly out;
  for (const auto& m : monomials_) out[m.g_power].add(m.x_power, m.coefficient);
  return out;
}

VariationalSeries resum(int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("resum: order must be 1 or 2");
  const GPoly w = series::psi_exponent_series();

  // (x, Omega, omega, g) powers -> coefficient; hbar and M powers follow from x and g
  std::map<std::tuple<int, int, int, int>, Rational> acc;
  // omega^q -> Omega^q (1 + sigma)^(q/2), truncated at sigma^(order - k), then
  // sigma^i = (omega^2/Omega^2 - 1)^i expanded binomially
  auto push_expansion = [&](const Rational& c, int x_power, int g_power, const std::vector<Rational>& in_sigma,
                            int trial_power) {
    for (int i = 0; i < static_cast<int>(in_sigma.size()); ++i) {
      if (in_sigma[i] == 0) continue;
      for (int l = 0; l <= i; ++l) {
        Rational b = Rational(binomial(i, l));
        if ((i - l) % 2 == 1) b = -b;
        acc[{x_power, trial_power - 2 * l, 2 * l, g_power}] += c * in_sigma[i] * b;
      }
    }
  };

  for (int k = 0; k <= order; ++k) {
    for (const auto& [x_power, c] : w[k].terms()) {
      const int q = series_dimension(k, x_power).omega;
      auto coeffs = binomial_coefficients(Rational(q, 2), order - k);
      push_expansion(c, x_power, k, coeffs, q);
    }
  }
  // (1/4) log omega -> (1/4) log Omega + (1/8) log(1 + sigma)
  const Rational log_coefficient(1, 4);
  {
    auto coeffs = log1p_coefficients(order);
    for (auto& c : coeffs) c *= log_coefficient / 2;
    push_expansion(Rational(1), 0, 0, coeffs, 0);
  }

  std::vector<Monomial> monomials;
  for (const auto& [key, c] : acc) {
    if (c == 0) continue;
    const auto [xp, tp, op, gp] = key;
    const Dim d = series_dimension(gp, xp);
    monomials.push_back(Monomial{c, xp, tp, op, gp, d.hbar, d.mass});
  }
  return VariationalSeries(order, std::move(monomials), log_coefficient);
}

WDerivatives w_derivatives(const VariationalSeries& s, double x, double trial, const OscillatorParams& p) {
  if (!(trial > 0.0)) throw std::invalid_argument("w_derivatives: trial frequency must be positive");
  return WDerivatives{s.derivative(0, x, trial, p), s.derivative(1, x, trial, p), s.derivative(2, x, trial, p)};
}

WDerivatives w_derivatives(const VariationalSeries& s, double x, double trial, double g) {
  OscillatorParams p;
  p.g = g;
  return w_derivatives(s, x, trial, p);
}

void SolverPolicy::validate() const {
  if (!(omega_min > 0.0) || !(omega_max > omega_min))
    throw std::invalid_argument("SolverPolicy: need 0 < omega_min < omega_max");
  if (scan_points < 3) throw std::invalid_argument("SolverPolicy: scan_points must be at least 3");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("SolverPolicy: rel_tol must be positive");
}

namespace {

template <class F>
double bisect(F&& f, double lo, double hi, double flo, double rel_tol) {
  for (int it = 0; it < 200 && (hi - lo) > rel_tol * lo; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

}  // namespace

namespace {

// Roots of the k-th Omega derivative on a log scan. Critical points, the
// roots of derivative k + 1 found the same way, split each scan interval into
// pieces on which the function is monotone, so a sign change there is one
// simple root. A critical point where the function vanishes relative to its
// scan neighbours is a double root. Recursing `depth` levels resolves up to
// that many coincident critical points inside one scan interval.
class RootScan {
 public:
  RootScan(const VariationalSeries& series, int derivative, double x, const OscillatorParams& p,
           const SolverPolicy& policy, int depth)
      : series_(series), base_(derivative), x_(x), p_(p), policy_(policy), om_(policy.scan_points) {
    const int n = policy.scan_points;
    const double lo = policy.omega_min * p.omega, hi = policy.omega_max * p.omega;
    for (int i = 0; i < n; ++i) om_[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    values_.resize(static_cast<std::size_t>(depth) + 1);
    for (int d = 0; d <= depth; ++d) {
      values_[d].resize(n);
      for (int i = 0; i < n; ++i) values_[d][i] = eval(d, om_[i]);
    }
  }

  std::vector<double> roots(int level) const {
    const auto& fv = values_[level];
    std::vector<double> crit;
    if (level + 1 < static_cast<int>(values_.size())) crit = roots(level + 1);
    auto f = [&](double t) { return eval(level, t); };
    std::vector<double> out;
    std::size_t c = 0;
    const std::size_t n = om_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<double> pts{om_[i]}, vals{fv[i]};
      const double scale = std::max(std::abs(fv[i]), std::abs(fv[i + 1]));
      for (; c < crit.size() && crit[c] < om_[i + 1]; ++c) {
        if (crit[c] <= om_[i]) continue;
        double fc = f(crit[c]);
        if (std::abs(fc) <= policy_.touch_tol * scale) fc = 0.0;
        pts.push_back(crit[c]);
        vals.push_back(fc);
      }
      pts.push_back(om_[i + 1]);
      vals.push_back(fv[i + 1]);
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        if (vals[k] == 0.0) {
          out.push_back(pts[k]);
        } else if ((vals[k] < 0.0) != (vals[k + 1] < 0.0) && vals[k + 1] != 0.0) {
          out.push_back(bisect(f, pts[k], pts[k + 1], vals[k], policy_.rel_tol));
        }
      }
    }
    if (fv[n - 1] == 0.0) out.push_back(om_[n - 1]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 10.0 * policy_.rel_tol * b; }),
              out.end());
    return out;
  }

 private:
  double eval(int level, double t) const { return series_.derivative(base_ + level, x_, t, p_); }

  const VariationalSeries& series_;
  int base_;
  double x_;
  const OscillatorParams& p_;
  const SolverPolicy& policy_;
  std::vector<double> om_;
  std::vector<std::vector<double>> values_;
};

}  // namespace

std::vector<double> derivative_roots(const VariationalSeries& series, int derivative, double x,
                                     const OscillatorParams& p, const SolverPolicy& policy) {
  policy.validate();
  return RootScan(series, derivative, x, p, policy, 2).roots(0);
}

PointRoots stationary_roots(const VariationalSeries& series, double x, const OscillatorParams& p,
                            const SolverPolicy& policy) {
  PointRoots r;
  if (!policy.turning_points_only) {
    r.roots = derivative_roots(series, 1, x, p, policy);
    r.kind = RootKind::Extremum;
    if (!r.roots.empty()) return r;
  }
  r.roots = derivative_roots(series, 2, x, p, policy);
  r.kind = RootKind::TurningPoint;
  return r;
}

OmegaProfile select_branches(std::span<const double> grid, std::vector<PointRoots> candidates, SeedRule seed) {
  if (grid.size() != candidates.size()) throw std::invalid_argument("select_branches: size mismatch");
  const std::size_t n = grid.size();
  if (n == 0) throw std::invalid_argument("select_branches: empty grid");
  for (std::size_t i = 0; i < n; ++i)
    if (candidates[i].roots.empty())
      throw NumericError("solve_omega_profile: no extremum or turning point at x = " + format_x(grid[i]));

  // cost[i][j]: least total variation from the seed at the last point down to root j at point i
  std::vector<std::vector<double>> cost(n);
  std::vector<std::vector<std::size_t>> from(n);
  const double inf = std::numeric_limits<double>::infinity();
  {
    const auto& last = candidates[n - 1].roots;
    cost[n - 1].assign(last.size(), inf);
    cost[n - 1][seed == SeedRule::Largest ? last.size() - 1 : 0] = 0.0;
  }
  for (std::size_t k = n - 1; k-- > 0;) {
    const auto& here = candidates[k].roots;
    const auto& next = candidates[k + 1].roots;
    cost[k].assign(here.size(), inf);
    from[k].assign(here.size(), 0);
    for (std::size_t j = 0; j < here.size(); ++j) {
      for (std::size_t m = 0; m < next.size(); ++m) {
        const double c = cost[k + 1][m] + std::abs(here[j] - next[m]);
        if (c < cost[k][j]) {
          cost[k][j] = c;
          from[k][j] = m;
        }
      }
    }
  }

  OmegaProfile prof;
  prof.x.assign(grid.begin(), grid.end());
  prof.omega.assign(n, 0.0);
  prof.kind.assign(n, RootKind::Extremum);
  prof.branch.assign(n, 0);
  std::size_t pick = static_cast<std::size_t>(std::min_element(cost[0].begin(), cost[0].end()) - cost[0].begin());
  for (std::size_t k = 0; k < n; ++k) {
    prof.omega[k] = candidates[k].roots[pick];
    prof.kind[k] = candidates[k].kind;
    prof.branch[k] = static_cast<int>(pick);
    if (k + 1 < n) pick = from[k][pick];
  }
  prof.candidates = std::move(candidates);
  return prof;
}

OmegaProfile solve_omega_profile(int order, std::span<const double> grid, const OscillatorParams& p,
                                 const SolverPolicy& policy) {
  p.validate();
  policy.validate();
  if (grid.empty()) throw std::invalid_argument("solve_omega_profile: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("solve_omega_profile: grid must be strictly increasing");
  const VariationalSeries series = resum(order);

  std::vector<PointRoots> candidates(grid.size());
  auto collect = [&](const SolverPolicy& pol) {
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    auto work = [&](std::size_t begin, std::size_t step) {
      for (std::size_t i = begin; i < grid.size(); i += step) candidates[i] = stationary_roots(series, grid[i], p, pol);
    };
    if (workers == 1 || grid.size() < 64) {
      work(0, 1);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    }
  };
  collect(policy);
  if (policy.fallback == Fallback::Uniform && !policy.turning_points_only) {
    const bool gap = std::any_of(candidates.begin(), candidates.end(),
                                 [](const PointRoots& c) { return c.kind == RootKind::TurningPoint; });
    if (gap) {
      SolverPolicy tp = policy;
      tp.turning_points_only = true;
      collect(tp);
    }
  }
  return select_branches(grid, std::move(candidates), policy.seed);
}

OmegaProfile solve_omega_profile(int order, double g, std::span<const double> grid, const SolverPolicy& policy) {
  OscillatorParams p;
  p.g = g;
  return solve_omega_profile(order, grid, p, policy);
}

GridFunction evaluate_profile(const VariationalSeries& series, const OmegaProfile& profile, const OscillatorParams& p) {
  GridFunction psi;
  psi.half_line = true;
  psi.x = profile.x;
  psi.values.resize(profile.x.size());
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    const double w = series.value(profile.x[i], profile.omega[i], p);
    if (!(w <= 700.0))
      throw NumericError("psi_variational: exponent " + format_x(w) + " at x = " + format_x(profile.x[i]) +
                         " (wave function blows up on the selected branch)");
    psi.values[i] = std::exp(w);
  }
  psi.normalize();
  return psi;
}

VariationalResult solve_variational(int order, std::span<const double> grid, const OscillatorParams& p,
                                    const SolverPolicy& policy) {
  if (grid.empty() || grid.front() < 0.0) throw std::invalid_argument("psi_variational: grid must cover x >= 0");
  VariationalResult r;
  r.profile = solve_omega_profile(order, grid, p, policy);
  r.psi = evaluate_profile(resum(order), r.profile, p);
  return r;
}

GridFunction psi_variational(int order, double g, std::span<const double> grid, const SolverPolicy& policy) {
  OscillatorParams p;
  p.g = g;
  return solve_variational(order, grid, p, policy).psi;
}

}  // namespace vpt::variational
