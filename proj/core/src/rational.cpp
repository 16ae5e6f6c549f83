#include "vpt/rational.hpp"

#include <stdexcept>

namespace vpt {

std::string to_string(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt numerator_of(const Rational& r) { return numerator(r); }
BigInt denominator_of(const Rational& r) { return denominator(r); }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("pow: zero to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  Rational out = 1;
  Rational b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1u;
  }
  return out;
}

BigInt double_factorial_odd(int k) {
  BigInt out = 1;
  for (int i = 2 * k - 1; i > 1; i -= 2) out *= i;
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

}  // namespace vpt
