#pragma once

#include <array>
#include <map>
#include <string>

#include "vpt/rational.hpp"

namespace vpt {

/// Polynomial in x with exact rational coefficients (natural units).
class XPoly {
 public:
  XPoly() = default;
  XPoly(std::initializer_list<std::pair<const int, Rational>> terms);
  explicit XPoly(const Rational& c) { add(0, c); }
  static XPoly constant(const Rational& c) { return XPoly(c); }

  Rational coefficient(int power) const;
  void add(int power, const Rational& c);
  const std::map<int, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_even() const;
  /// -1 for the zero polynomial.
  int degree() const;
  double evaluate(double x) const;

  XPoly& operator+=(const XPoly& o);
  XPoly& operator-=(const XPoly& o);
  XPoly& operator*=(const Rational& s);
  friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
  friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
  friend XPoly operator*(XPoly a, const Rational& s) { return a *= s; }
  friend XPoly operator*(const Rational& s, XPoly a) { return a *= s; }
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.terms_ == b.terms_; }

 private:
  std::map<int, Rational> terms_;  // zero coefficients never stored
};

std::string to_string(const XPoly& p);

/// Exponents of hbar, M and omega that restore physical units.
struct Dim {
  int hbar = 0;
  int mass = 0;
  int omega = 0;
  friend bool operator==(const Dim&, const Dim&) = default;
};

/// Units of the coefficient of g^k x^p in a dimensionless series (an exponent
/// or a wave-function prefactor): hbar^(k-p/2) M^(p/2-2k) omega^(p/2-3k).
Dim series_dimension(int g_order, int x_power);

/// Units of the coefficient of g^k * beta in the exponent: hbar^(1+k) M^(-2k) omega^(1-3k).
Dim beta_linear_dimension(int g_order);

/// Energy coefficient of g^k: hbar^(1+k) M^(-2k) omega^(1-3k).
inline Dim energy_dimension(int g_order) { return beta_linear_dimension(g_order); }

/// Series in g truncated after g^2 whose coefficients are polynomials in x.
struct GPoly {
  static constexpr int kMaxOrder = 2;
  std::array<XPoly, kMaxOrder + 1> orders;

  XPoly& operator[](int k) { return orders.at(static_cast<std::size_t>(k)); }
  const XPoly& operator[](int k) const { return orders.at(static_cast<std::size_t>(k)); }
  Rational coefficient(int g_order, int x_power) const { return (*this)[g_order].coefficient(x_power); }

  /// Sum over orders of g^k P_k(x), in natural units.
  double evaluate(double x, double g) const;
  bool is_even() const;

  GPoly& operator+=(const GPoly& o);
  friend GPoly operator+(GPoly a, const GPoly& b) { return a += b; }
  friend bool operator==(const GPoly&, const GPoly&) = default;
};

}  // namespace vpt
