#pragma once

// Exact tau-integration of Feynman diagrams in the low-temperature limit.
//
// Natural units hbar = M = omega = 1. Imaginary times are measured in units of
// 1/omega and B = hbar*beta*omega is the total time. In that limit
//
//   x_cl(tau)     = x (e^{-tau} + e^{-(B - tau)})
//   G(t1, t2)     = 1/2 [e^{-|t1 - t2|} - e^{-(t1 + t2)} - e^{-2B + t1 + t2}]
//
// and every diagram is a finite sum of exponential monomials whose integrals
// over [0, B] are elementary. Results keep the B^1 and B^0 parts; anything
// decaying like e^{-cB} is dropped after integration.

#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "vpt/poly.hpp"
#include "vpt/rational.hpp"
#include "vpt/wick.hpp"

namespace vpt::lowtemp {

/// coefficient * x^x_power * exp(sum_v tau_rate[v] * tau_v + beta_rate * B)
struct ExpTerm {
  Rational coefficient;
  int x_power = 0;
  std::map<int, int> tau_rate;
  int beta_rate = 0;
};

struct ExpSum {
  std::vector<ExpTerm> terms;

  friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
  static ExpSum one();
  bool has_even_x_powers() const;
};

enum class FactorKind { ClassicalPath, GreenFunction };

/// Relative order of the two Green-function arguments.
enum class Ordering { Unresolved, FirstEarlier, SecondEarlier, EqualTime };

/// Low-temperature classical path x_cl(tau_v).
ExpSum classical_path(int v);

/// Low-temperature G(tau_v, tau_w) on the given ordering region. Equal-time
/// requires v == w; Unresolved throws std::invalid_argument.
ExpSum green_function(int v, int w, Ordering ordering);

ExpSum low_t_factor(FactorKind kind, int v, int w = 0, Ordering ordering = Ordering::Unresolved);

/// beta_linear is the coefficient of B = hbar*beta*omega; both parts are
/// polynomials in x for a single diagram with no coupling prefactor.
struct DiagramValue {
  XPoly beta_linear;
  XPoly constant;
  int vertex_count = 1;

  /// Units of the corresponding monomial of W once weighted by (g/hbar)^vertex_count.
  Dim dimension(int x_power) const { return series_dimension(vertex_count, x_power); }
  Dim beta_linear_dimension() const { return vpt::beta_linear_dimension(vertex_count); }
};

/// Integrates one diagram (multiplicity included) over [0, B]^V, V = 1 or 2.
/// Throws NumericError on a divergent remainder, std::invalid_argument for
/// more than two vertices. `vertices` lists the integration variables; when
/// empty it is inferred from the term (and defaults to a single vertex).
DiagramValue integrate_diagram(const wick::DiagramTerm& term, std::vector<int> vertices = {},
                               std::ostream* log = nullptr);

/// (beta_linear, constant) parts of the order-n exponent: the sum of
/// integrate_diagram over connected_w_terms(n) weighted by -1 (n = 1) or
/// +1/2 (n = 2). Only entry n of each GPoly is filled.
std::pair<GPoly, GPoly> assemble_w_exponent(int order, std::ostream* log = nullptr);

}  // namespace vpt::lowtemp
