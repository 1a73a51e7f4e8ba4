#pragma once

#include <cstdint>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace ssd {

/// Exact ratio of 64-bit integers, always in lowest terms with a positive
/// denominator.
using Rational = boost::rational<std::int64_t>;

/// Reduces a 128-bit fraction and narrows it to Rational.
inline Rational make_rational(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
    throw std::overflow_error("rational value does not fit in 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Display-only rendering with 12 significant digits.
inline std::string to_decimal(const Rational& r) {
  const long double v = static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

}  // namespace ssd
