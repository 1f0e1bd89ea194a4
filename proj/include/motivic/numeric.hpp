#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace motivic {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer ipow(Integer base, std::uint64_t exp) {
  Integer result = 1;
  while (exp != 0) {
    if (exp & 1U) result *= base;
    base *= base;
    exp >>= 1U;
  }
  return result;
}

inline Rational rpow(const Rational& base, std::int64_t exp) {
  Rational result = 1;
  Rational b = exp < 0 ? Rational(1) / base : base;
  auto e = static_cast<std::uint64_t>(exp < 0 ? -exp : exp);
  while (e != 0) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

// Renders "a" or "a/b" with b > 0.
inline std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline bool fits_int64(const Integer& z) {
  return z >= std::numeric_limits<std::int64_t>::min() &&
         z <= std::numeric_limits<std::int64_t>::max();
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t lcm_i64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / static_cast<std::int64_t>(gcd_u64(static_cast<std::uint64_t>(a),
                                               static_cast<std::uint64_t>(b))) *
         b;
}

bool is_prime(std::uint64_t n);

// Largest k with p^k | z, for z != 0.
std::int64_t valuation(const Integer& z, std::uint64_t p);

}  // namespace motivic
