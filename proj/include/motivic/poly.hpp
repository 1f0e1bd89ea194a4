#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motivic/numeric.hpp"

namespace motivic {

// Dense univariate polynomial with integer coefficients, lowest degree first.
// The zero polynomial has no coefficients; otherwise the top one is nonzero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long long> coeffs);

  static IntPoly constant(const Integer& c);
  static IntPoly monomial(const Integer& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  const Integer& leading() const { return coeffs_.back(); }

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  IntPoly& operator*=(const Integer& c);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const Integer& c) { return a *= c; }
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  // Multiply by x^k.
  IntPoly shifted(std::size_t k) const;
  // Divide by x^k; the low k coefficients must vanish.
  IntPoly unshifted(std::size_t k) const;
  // Number of trailing zero coefficients (x-adic valuation); 0 for zero.
  std::size_t low_order() const;

  // Division by a monic polynomial: (quotient, remainder).
  std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& monic) const;
  bool divisible_by_monic(const IntPoly& monic) const;

  IntPoly derivative() const;
  Integer content() const;
  // f(a + b*x)
  IntPoly compose_affine(const Integer& a, const Integer& b) const;

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;

  std::string to_string(std::string_view var = "X") const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

// L^n - 1 for n >= 1.
IntPoly lefschetz_minus_one(std::int64_t n);
// The n-th cyclotomic polynomial.
IntPoly cyclotomic(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);

// Parses "3*X^2 - X + 5" style input (integer coefficients, one variable,
// caret powers, implicit multiplication "3X^2" accepted).
IntPoly parse_int_poly(std::string_view text, char var = 'X');

// Discriminant via the Sylvester resultant of f and f'.
Integer discriminant(const IntPoly& f);

}  // namespace motivic
