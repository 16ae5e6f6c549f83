#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace vpt {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "n/d", or just "n" when the denominator is one.
std::string to_string(const Rational& r);

BigInt numerator_of(const Rational& r);
BigInt denominator_of(const Rational& r);

/// Rational power with integer exponent; zero base with a negative exponent throws.
Rational pow(const Rational& base, int exponent);

/// (2k-1)!!, with (-1)!! = 1.
BigInt double_factorial_odd(int k);

BigInt binomial(int n, int k);

}  // namespace vpt
