#include "vpt/lowtemp.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>

#include "vpt/errors.hpp"

namespace vpt::lowtemp {

ExpSum ExpSum::one() { return ExpSum{{ExpTerm{Rational(1), 0, {}, 0}}}; }

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  ExpSum out;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      ExpTerm t = ta;
      t.coefficient *= tb.coefficient;
      t.x_power += tb.x_power;
      t.beta_rate += tb.beta_rate;
      for (const auto& [v, r] : tb.tau_rate) t.tau_rate[v] += r;
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

bool ExpSum::has_even_x_powers() const {
  return std::all_of(terms.begin(), terms.end(), [](const ExpTerm& t) { return t.x_power % 2 == 0; });
}

ExpSum classical_path(int v) {
  return ExpSum{{
      ExpTerm{Rational(1), 1, {{v, -1}}, 0},
      ExpTerm{Rational(1), 1, {{v, +1}}, -1},
  }};
}

ExpSum green_function(int v, int w, Ordering ordering) {
  const Rational half(1, 2);
  switch (ordering) {
    case Ordering::Unresolved:
      throw std::invalid_argument("green_function: ordering of the time arguments must be resolved");
    case Ordering::EqualTime: {
      if (v != w) throw std::invalid_argument("green_function: equal-time request with distinct vertices");
      return ExpSum{{
          ExpTerm{half, 0, {}, 0},
          ExpTerm{-half, 0, {{v, -2}}, 0},
          ExpTerm{-half, 0, {{v, +2}}, -2},
      }};
    }
    case Ordering::FirstEarlier:
    case Ordering::SecondEarlier: {
      if (v == w) throw std::invalid_argument("green_function: strict ordering needs distinct vertices");
      const int early = ordering == Ordering::FirstEarlier ? v : w;
      const int late = ordering == Ordering::FirstEarlier ? w : v;
      return ExpSum{{
          ExpTerm{half, 0, {{late, -1}, {early, +1}}, 0},
          ExpTerm{-half, 0, {{v, -1}, {w, -1}}, 0},
          ExpTerm{-half, 0, {{v, +1}, {w, +1}}, -2},
      }};
    }
  }
  throw std::invalid_argument("green_function: bad ordering");
}

ExpSum low_t_factor(FactorKind kind, int v, int w, Ordering ordering) {
  if (kind == FactorKind::ClassicalPath) return classical_path(v);
  return green_function(v, w, ordering);
}

namespace {

constexpr int kBeta = 0;  // variable index of B; vertices are positive

// coefficient * x^x_power * prod_var var^power * e^{rate * var}
struct PolyExp {
  Rational coefficient;
  int x_power = 0;
  std::map<int, std::pair<int, int>> vars;  // var -> (power, rate)
};

PolyExp lift(const ExpTerm& t) {
  PolyExp p{t.coefficient, t.x_power, {}};
  for (const auto& [v, r] : t.tau_rate)
    if (r != 0) p.vars[v] = {0, r};
  if (t.beta_rate != 0) p.vars[kBeta] = {0, t.beta_rate};
  return p;
}

void multiply_var(PolyExp& t, int var, int power, int rate) {
  auto& [p, r] = t.vars[var];
  p += power;
  r += rate;
  if (p == 0 && r == 0) t.vars.erase(var);
}

Rational falling(int p, int i) {  // p! / (p - i)!
  Rational out = 1;
  for (int k = 0; k < i; ++k) out *= (p - k);
  return out;
}

// Integral of `var` over [0, upper].
std::vector<PolyExp> integrate_var(const std::vector<PolyExp>& in, int var, int upper) {
  std::vector<PolyExp> out;
  for (const auto& t : in) {
    auto [p, r] = t.vars.count(var) ? t.vars.at(var) : std::pair<int, int>{0, 0};
    PolyExp rest = t;
    rest.vars.erase(var);
    if (r == 0) {
      PolyExp u = rest;
      u.coefficient /= (p + 1);
      multiply_var(u, upper, p + 1, 0);
      out.push_back(std::move(u));
      continue;
    }
    // int_0^U s^p e^{rs} ds = e^{rU} sum_i (-1)^i p!/(p-i)! U^{p-i} / r^{i+1} - (-1)^p p! / r^{p+1}
    const Rational rr(r);
    for (int i = 0; i <= p; ++i) {
      PolyExp u = rest;
      u.coefficient *= falling(p, i) / pow(rr, i + 1);
      if (i % 2 == 1) u.coefficient = -u.coefficient;
      multiply_var(u, upper, p - i, r);
      out.push_back(std::move(u));
    }
    PolyExp c = rest;
    c.coefficient *= falling(p, p) / pow(rr, p + 1);
    if (p % 2 == 0) c.coefficient = -c.coefficient;
    out.push_back(std::move(c));
  }
  return out;
}

std::string describe(const wick::DiagramTerm& t) { return wick::format_term(t); }

}  // namespace

DiagramValue integrate_diagram(const wick::DiagramTerm& term, std::vector<int> vertices, std::ostream* log) {
  if (vertices.empty()) {
    std::set<int> vs;
    for (const auto& [v, c] : term.crosses) vs.insert(v);
    for (const auto& [p, c] : term.edges) {
      vs.insert(p.first);
      vs.insert(p.second);
    }
    vertices.assign(vs.begin(), vs.end());
    if (vertices.empty()) vertices.push_back(1);
  }
  if (vertices.size() > 2) throw std::invalid_argument("integrate_diagram: more than two vertices unsupported");
  for (int v : vertices)
    if (v <= 0) throw std::invalid_argument("integrate_diagram: vertex indices must be positive");

  // Each ordering region is integrated innermost-first up to B. Edge pairs are
  // stored ordered, so FirstEarlier means tau_a < tau_b for the pair (a, b).
  auto integrand = [&](Ordering cross_ordering) {
    ExpSum prod = ExpSum::one();
    for (const auto& [v, c] : term.crosses)
      for (int i = 0; i < c; ++i) prod = prod * classical_path(v);
    for (const auto& [p, c] : term.edges) {
      const Ordering o = p.first == p.second ? Ordering::EqualTime : cross_ordering;
      for (int i = 0; i < c; ++i) prod = prod * green_function(p.first, p.second, o);
    }
    return prod;
  };
  std::vector<std::pair<ExpSum, std::vector<int>>> regions;
  if (vertices.size() == 1) {
    regions.push_back({integrand(Ordering::Unresolved), {vertices[0]}});
  } else {
    const int a = std::min(vertices[0], vertices[1]);
    const int b = std::max(vertices[0], vertices[1]);
    regions.push_back({integrand(Ordering::FirstEarlier), {a, b}});
    regions.push_back({integrand(Ordering::SecondEarlier), {b, a}});
  }

  if (log) *log << "diagram " << describe(term) << '\n';

  // (x_power, B power, B rate) -> coefficient
  std::map<std::tuple<int, int, int>, Rational> collected;
  for (const auto& [integrand, order] : regions) {
    if (!integrand.has_even_x_powers() && log) *log << "  note: odd x powers present\n";
    std::vector<PolyExp> terms;
    terms.reserve(integrand.terms.size());
    for (const auto& t : integrand.terms) terms.push_back(lift(t));
    if (log) {
      *log << "  region";
      for (std::size_t i = 0; i < order.size(); ++i) *log << (i ? " < " : " ") << "tau" << order[i];
      *log << ": " << terms.size() << " exponential monomials\n";
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int upper = i + 1 < order.size() ? order[i + 1] : kBeta;
      terms = integrate_var(terms, order[i], upper);
    }
    for (const auto& t : terms) {
      for (const auto& [var, pr] : t.vars)
        if (var != kBeta) throw std::logic_error("integrate_diagram: unintegrated variable");
      auto [p, r] = t.vars.count(kBeta) ? t.vars.at(kBeta) : std::pair<int, int>{0, 0};
      collected[{t.x_power, p, r}] += t.coefficient;
    }
  }

  DiagramValue value;
  value.vertex_count = static_cast<int>(vertices.size());
  for (const auto& [key, c] : collected) {
    if (c == 0) continue;
    const auto [xp, p, r] = key;
    if (r < 0) continue;  // vanishes as B -> infinity
    if (r > 0)
      throw NumericError("integrate_diagram: divergent e^{" + std::to_string(r) + "B} remainder in " +
                         describe(term));
    if (p > 1)
      throw NumericError("integrate_diagram: B^" + std::to_string(p) + " remainder in " + describe(term));
    if (p == 1)
      value.beta_linear.add(xp, c);
    else
      value.constant.add(xp, c);
  }
  const Rational m(term.multiplicity);
  value.beta_linear *= m;
  value.constant *= m;
  if (log) {
    *log << "  -> beta-linear: " << to_string(value.beta_linear) << '\n';
    *log << "  -> constant:    " << to_string(value.constant) << '\n';
  }
  return value;
}

std::pair<GPoly, GPoly> assemble_w_exponent(int order, std::ostream* log) {
  if (order != 1 && order != 2) throw std::invalid_argument("assemble_w_exponent: order must be 1 or 2");
  const wick::WickSum sum = wick::connected_w_terms(order);
  const Rational prefactor = order == 1 ? Rational(-1) : Rational(1, 2);
  GPoly beta_linear;
  GPoly constant;
  for (const auto& t : sum.terms()) {
    const DiagramValue v = integrate_diagram(t, sum.vertices(), log);
    beta_linear[order] += v.beta_linear * prefactor;
    constant[order] += v.constant * prefactor;
  }
  if (log) {
    *log << "order " << order << " exponent (prefactor " << to_string(prefactor) << " applied)\n";
    *log << "  beta-linear: " << to_string(beta_linear[order]) << '\n';
    *log << "  constant:    " << to_string(constant[order]) << '\n';
  }
  return {beta_linear, constant};
}

}  // namespace vpt::lowtemp
