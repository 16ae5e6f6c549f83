#pragma once

// Variational resummation of the ground-state exponent.
//
// The exponent W(x) of Psi = exp W is rewritten with omega -> Omega sqrt(1 + g r),
// re-expanded in g at fixed r to order n, and r = (omega^2 - Omega^2)/(g Omega^2)
// is put back. The trial frequency Omega is then fixed per point x by requiring
// dW/dOmega = 0, or d^2W/dOmega^2 = 0 where no such extremum exists.

#include <span>
#include <vector>

#include "vpt/grid.hpp"
#include "vpt/params.hpp"
#include "vpt/poly.hpp"
#include "vpt/rational.hpp"

namespace vpt::variational {

/// coefficient * x^x_power * Omega^trial_power * omega^omega_power * g^g_power * hbar^hbar_power * M^mass_power
struct Monomial {
  Rational coefficient;
  int x_power = 0;
  int trial_power = 0;
  int omega_power = 0;
  int g_power = 0;
  int hbar_power = 0;
  int mass_power = 0;
};

/// W^(n)(x, Omega) = log_coefficient * log(M Omega / (hbar pi)) + sum of monomials.
class VariationalSeries {
 public:
  VariationalSeries(int order, std::vector<Monomial> monomials, Rational log_coefficient);

  int order() const { return order_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Rational& log_coefficient() const { return log_coefficient_; }

  /// n-th derivative with respect to Omega (n = 0 gives W itself). Omega <= 0 throws.
  double derivative(int n, double x, double trial, const OscillatorParams& p) const;
  double value(double x, double trial, const OscillatorParams& p) const { return derivative(0, x, trial, p); }

  /// Exact polynomial part at Omega = omega in natural units (log term excluded).
  GPoly at_fixed_point() const;

 private:
  int order_;
  std::vector<Monomial> monomials_;
  Rational log_coefficient_;
  std::vector<double> coefficients_;  // monomial coefficients as doubles
  double log_coefficient_d_ = 0.0;
};

/// Order 1 or 2; anything else throws std::invalid_argument.
VariationalSeries resum(int order);

struct WDerivatives {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

WDerivatives w_derivatives(const VariationalSeries& series, double x, double trial, const OscillatorParams& p);
/// Natural units with coupling g.
WDerivatives w_derivatives(const VariationalSeries& series, double x, double trial, double g);

enum class SeedRule { Largest, Smallest };
enum class RootKind { Extremum, TurningPoint };
/// Where the extremum equation has no root: fall back to turning points at
/// that x only (Pointwise), or on the whole grid (Uniform).
enum class Fallback { Pointwise, Uniform };

struct SolverPolicy {
  double omega_min = 1e-3;  // in units of omega
  double omega_max = 1e2;
  int scan_points = 400;
  SeedRule seed = SeedRule::Largest;
  double rel_tol = 1e-12;
  /// A critical point of f counts as a double root when |f| there is below
  /// touch_tol times its value at the neighbouring scan points.
  double touch_tol = 1e-9;
  Fallback fallback = Fallback::Uniform;
  /// Skip the extremum equation and use turning points everywhere.
  bool turning_points_only = false;

  void validate() const;
};

/// All positive roots of the n-th Omega-derivative of W at x inside the
/// policy bracket, ascending.
std::vector<double> derivative_roots(const VariationalSeries& series, int derivative, double x,
                                     const OscillatorParams& p, const SolverPolicy& policy);

struct PointRoots {
  RootKind kind = RootKind::Extremum;
  std::vector<double> roots;
};

/// Extremum roots if there are any, turning-point roots otherwise.
PointRoots stationary_roots(const VariationalSeries& series, double x, const OscillatorParams& p,
                            const SolverPolicy& policy);

struct OmegaProfile {
  std::vector<double> x;
  std::vector<double> omega;
  std::vector<RootKind> kind;
  std::vector<int> branch;  // index of the chosen root among the ascending candidates
  std::vector<PointRoots> candidates;
};

/// Roots per grid point, then one root per point chosen for continuity: the
/// seed rule fixes the root at the largest x, and among all paths through the
/// candidates the one with the smallest total variation sum |Omega_i - Omega_{i-1}|
/// is taken. Throws NumericError if some x has no root of either equation.
OmegaProfile solve_omega_profile(int order, std::span<const double> grid, const OscillatorParams& p,
                                 const SolverPolicy& policy = {});
OmegaProfile solve_omega_profile(int order, double g, std::span<const double> grid,
                                 const SolverPolicy& policy = {});

/// Continuity selection on precomputed candidates.
OmegaProfile select_branches(std::span<const double> grid, std::vector<PointRoots> candidates, SeedRule seed);

/// exp W(x, Omega(x)) on a half-line grid, normalized over the even extension.
/// Throws NumericError when W exceeds 700 anywhere.
GridFunction evaluate_profile(const VariationalSeries& series, const OmegaProfile& profile,
                              const OscillatorParams& p);

struct VariationalResult {
  OmegaProfile profile;
  GridFunction psi;
};

VariationalResult solve_variational(int order, std::span<const double> grid, const OscillatorParams& p,
                                    const SolverPolicy& policy = {});

GridFunction psi_variational(int order, double g, std::span<const double> grid, const SolverPolicy& policy = {});

}  // namespace vpt::variational
