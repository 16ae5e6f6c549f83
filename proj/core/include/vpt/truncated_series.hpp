#pragma once

#include <stdexcept>
#include <vector>

#include "vpt/rational.hpp"

namespace vpt {

/// Power series c_0 + c_1 t + ... + c_N t^N, all arithmetic truncated at t^N.
/// T needs a zero default value, T + T, T * T and T * Rational.
template <class T>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int max_order) : coeffs_(static_cast<std::size_t>(max_order) + 1) {
    if (max_order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
  }
  TruncatedSeries(int max_order, std::vector<T> coeffs) : TruncatedSeries(max_order) {
    for (std::size_t k = 0; k < coeffs.size() && k < coeffs_.size(); ++k) coeffs_[k] = std::move(coeffs[k]);
  }

  int max_order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  T& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  TruncatedSeries& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c = c * s;
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check(b);
    TruncatedSeries out(a.max_order());
    for (int i = 0; i <= a.max_order(); ++i)
      for (int j = 0; i + j <= a.max_order(); ++j) out[i + j] += a[i] * b[j];
    return out;
  }

  TruncatedSeries pow(int n) const {
    TruncatedSeries out(max_order());
    out[0] = unit();
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
  }

  /// Sum_k coeff[k] * s^k for a series s with vanishing constant term.
  static TruncatedSeries compose(const std::vector<Rational>& coeff, const TruncatedSeries& s) {
    if (!(s[0] == T{})) throw std::domain_error("TruncatedSeries: composition needs a zero constant term");
    TruncatedSeries out(s.max_order());
    TruncatedSeries power(s.max_order());
    power[0] = unit();
    for (std::size_t k = 0; k < coeff.size() && static_cast<int>(k) <= s.max_order(); ++k) {
      out += power * coeff[k];
      power = power * s;
    }
    return out;
  }

 private:
  static T unit() { return T(Rational(1)); }
  void check(const TruncatedSeries& o) const {
    if (o.coeffs_.size() != coeffs_.size()) throw std::invalid_argument("TruncatedSeries: order mismatch");
  }

  std::vector<T> coeffs_;
};

/// Taylor coefficients up to t^n of exp(t), log(1 + t) and (1 + t)^alpha.
std::vector<Rational> exp_coefficients(int n);
std::vector<Rational> log1p_coefficients(int n);
std::vector<Rational> binomial_coefficients(const Rational& alpha, int n);

template <class T>
TruncatedSeries<T> exp_series(const TruncatedSeries<T>& s) {
  return TruncatedSeries<T>::compose(exp_coefficients(s.max_order()), s);
}

template <class T>
TruncatedSeries<T> log1p_series(const TruncatedSeries<T>& s) {
  return TruncatedSeries<T>::compose(log1p_coefficients(s.max_order()), s);
}

template <class T>
TruncatedSeries<T> pow1p_series(const TruncatedSeries<T>& s, const Rational& alpha) {
  return TruncatedSeries<T>::compose(binomial_coefficients(alpha, s.max_order()), s);
}

}  // namespace vpt
