#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motivic/numeric.hpp"
#include "motivic/poly.hpp"

namespace motivic::kring {

// An integer or minus infinity; the latter sorts below every integer.
class Dimension {
 public:
  constexpr Dimension(std::int64_t v) : value_(v), neg_inf_(false) {}  // NOLINT
  static constexpr Dimension neg_inf() { return Dimension(); }

  constexpr bool is_neg_inf() const { return neg_inf_; }
  constexpr std::int64_t value() const { return value_; }

  friend constexpr bool operator==(const Dimension& a, const Dimension& b) {
    return a.neg_inf_ == b.neg_inf_ && (a.neg_inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Dimension& a, const Dimension& b) {
    if (a.neg_inf_ || b.neg_inf_) return b.neg_inf_ <=> a.neg_inf_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return neg_inf_ ? "-inf" : std::to_string(value_); }

 private:
  constexpr Dimension() : value_(0), neg_inf_(true) {}
  std::int64_t value_;
  bool neg_inf_;
};

// Coefficients of a Laurent expansion in L^{-1} whose tail repeats with a
// fixed period. Exponents >= head_low are listed explicitly in `head`
// (head[k] is the coefficient of L^{head_top - k}); below head_low the
// coefficient of L^j is block[(head_low - 1 - j) mod period].
struct LaurentExpansion {
  std::int64_t head_top = 0;
  std::int64_t head_low = 0;
  std::vector<Integer> head;
  std::int64_t period = 0;  // 0: the expansion is finite
  std::vector<Integer> block;

  Integer coeff(std::int64_t j) const;
};

// Element of Z[L, L^{-1}, (L^k - 1)^{-1} : k >= 1], stored canonically as
//   numerator / (L^l_power * prod_d Phi_d(L)^{e_d})
// with Phi_d the cyclotomic polynomials, L not dividing the numerator and no
// Phi_d with e_d > 0 dividing it. l_power may be negative.
class LaurentRational {
 public:
  LaurentRational() = default;
  LaurentRational(long long c) : LaurentRational(Integer(c)) {}  // NOLINT
  LaurentRational(const Integer& c);  // NOLINT

  static LaurentRational lefschetz_power(std::int64_t k);
  static LaurentRational polynomial(const IntPoly& numerator);
  static LaurentRational make(IntPoly numerator, std::int64_t l_power,
                              std::map<std::int64_t, std::int64_t> cyclotomic_exponents);

  bool is_zero() const { return num_.is_zero(); }
  const IntPoly& numerator() const { return num_; }
  std::int64_t l_power() const { return l_power_; }
  const std::map<std::int64_t, std::int64_t>& cyclotomic_exponents() const { return cyclo_; }

  LaurentRational operator-() const;
  friend LaurentRational operator+(const LaurentRational& a, const LaurentRational& b);
  friend LaurentRational operator-(const LaurentRational& a, const LaurentRational& b) { return a + (-b); }
  friend LaurentRational operator*(const LaurentRational& a, const LaurentRational& b);
  friend LaurentRational operator/(const LaurentRational& a, const LaurentRational& b) { return a * b.inverse(); }
  LaurentRational& operator+=(const LaurentRational& b) { return *this = *this + b; }
  LaurentRational& operator*=(const LaurentRational& b) { return *this = *this * b; }
  friend bool operator==(const LaurentRational&, const LaurentRational&) = default;

  // Throws unsupported-denominator unless the numerator is +-1 times a
  // product of cyclotomic polynomials, division-by-zero for 0.
  LaurentRational inverse() const;
  bool is_unit() const;

  Dimension dimension() const;
  bool is_laurent_polynomial() const { return cyclo_.empty(); }
  // Expansion coefficients are eventually periodic iff every e_d <= 1.
  bool has_periodic_expansion() const;
  LaurentExpansion expansion() const;
  // Coefficient of L^j in the expansion at L = infinity (any element).
  Integer coefficient(std::int64_t j) const;
  // Coefficients of L^high, L^{high-1}, ..., L^low.
  std::vector<Integer> coefficients(std::int64_t low, std::int64_t high) const;

  Rational evaluate(const Rational& lefschetz) const;

  // Denominator rewritten as L^l_power * prod (L^{k_i} - 1), l_power >= 0,
  // k_i ascending; the numerator absorbs the extra cyclotomic factors.
  struct ProductForm {
    IntPoly numerator;
    std::int64_t l_power = 0;
    std::vector<std::int64_t> cyclo;
  };
  ProductForm product_form() const;

  std::string to_string() const;

 private:
  void normalize();
  IntPoly denominator_without_l() const;

  IntPoly num_;
  std::int64_t l_power_ = 0;
  std::map<std::int64_t, std::int64_t> cyclo_;
};

}  // namespace motivic::kring
