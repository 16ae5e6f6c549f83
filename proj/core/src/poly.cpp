#include "vpt/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace vpt {

XPoly::XPoly(std::initializer_list<std::pair<const int, Rational>> terms) {
  for (const auto& [p, c] : terms) add(p, c);
}

Rational XPoly::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? Rational(0) : it->second;
}

void XPoly::add(int power, const Rational& c) {
  if (power < 0) throw std::invalid_argument("XPoly: negative power");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(power, 0);
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool XPoly::is_even() const {
  for (const auto& [p, c] : terms_)
    if (p % 2 != 0) return false;
  return true;
}

int XPoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

double XPoly::evaluate(double x) const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += to_double(c) * std::pow(x, p);
  return s;
}

XPoly& XPoly::operator+=(const XPoly& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

XPoly& XPoly::operator-=(const XPoly& o) {
  for (const auto& [p, c] : o.terms_) add(p, -c);
  return *this;
}

XPoly& XPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  XPoly out;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) out.add(pa + pb, ca * cb);
  return out;
}

std::string to_string(const XPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [power, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    if (power > 0) out += "*x^" + std::to_string(power);
  }
  return out;
}

Dim series_dimension(int g_order, int x_power) {
  if (x_power % 2 != 0) throw std::invalid_argument("series_dimension: odd x power");
  const int j = x_power / 2;
  return Dim{g_order - j, j - 2 * g_order, j - 3 * g_order};
}

Dim beta_linear_dimension(int g_order) { return Dim{1 + g_order, -2 * g_order, 1 - 3 * g_order}; }

double GPoly::evaluate(double x, double g) const {
  double s = 0.0;
  double gk = 1.0;
  for (const auto& p : orders) {
    s += gk * p.evaluate(x);
    gk *= g;
  }
  return s;
}

bool GPoly::is_even() const {
  for (const auto& p : orders)
    if (!p.is_even()) return false;
  return true;
}

GPoly& GPoly::operator+=(const GPoly& o) {
  for (std::size_t k = 0; k < orders.size(); ++k) orders[k] += o.orders[k];
  return *this;
}

}  // namespace vpt
