#include "vpt/truncated_series.hpp"

namespace vpt {

std::vector<Rational> exp_coefficients(int n) {
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  Rational f = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) f /= k;
    c[k] = f;
  }
  return c;
}

std::vector<Rational> log1p_coefficients(int n) {
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int k = 1; k <= n; ++k) c[k] = Rational(k % 2 == 1 ? 1 : -1, k);
  return c;
}

std::vector<Rational> binomial_coefficients(const Rational& alpha, int n) {
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  Rational b = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) b = b * (alpha - (k - 1)) / k;
    c[k] = b;
  }
  return c;
}

}  // namespace vpt
