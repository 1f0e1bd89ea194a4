#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "motivic/numeric.hpp"
#include "motivic/poly.hpp"

namespace motivic::padic {

// Polynomial over the prime field F_p, lowest degree first, trimmed.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  static FpPoly from_int(const IntPoly& f, std::uint64_t p);
  static FpPoly x(std::uint64_t p) { return FpPoly(p, {0, 1}); }
  static FpPoly constant(std::uint64_t p, std::uint64_t c) { return FpPoly(p, {c}); }

  std::uint64_t p() const { return p_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
  std::uint64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  std::uint64_t leading() const { return coeffs_.back(); }

  FpPoly monic() const;
  FpPoly derivative() const;
  std::uint64_t eval(std::uint64_t x) const;

  FpPoly operator-() const;
  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  FpPoly scaled(std::uint64_t c) const;
  friend bool operator==(const FpPoly&, const FpPoly&) = default;

  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
  FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }
  FpPoly operator/(const FpPoly& d) const { return divmod(d).first; }

  std::string to_string(std::string_view var = "X") const;

 private:
  void trim();
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> coeffs_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

// Monic gcd; gcd(0, 0) = 0.
FpPoly gcd(FpPoly a, FpPoly b);

// base^exp mod modulus.
FpPoly powmod(FpPoly base, Integer exp, const FpPoly& modulus);

// X^(p^k) mod g, by k successive p-th powers.
FpPoly frobenius_power(const FpPoly& g, std::int64_t k);

bool is_irreducible(const FpPoly& g);
bool is_squarefree(const FpPoly& g);

// Lexicographically smallest monic irreducible of degree f, coefficients
// compared from the constant term upwards.
FpPoly deterministic_irreducible(std::uint64_t p, std::int64_t f);

// degree d -> number of irreducible factors of degree d (g squarefree).
using DegreeProfile = std::map<std::int64_t, std::int64_t>;
DegreeProfile distinct_degree_profile(const FpPoly& g);

// Distinct roots of g in F_{p^f}.
std::uint64_t root_count_gcd(const FpPoly& g, std::int64_t f);
std::uint64_t root_count_exhaustive(const FpPoly& g, std::int64_t f);
// Uses the gcd route; cross-checks exhaustively when p^f <= 10^4.
std::uint64_t root_count(const FpPoly& g, std::int64_t f);

// Yun-style squarefree decomposition: (factor, multiplicity), factors monic,
// pairwise coprime, product of factor^multiplicity equals monic(g).
std::vector<std::pair<FpPoly, std::int64_t>> squarefree_decomposition(const FpPoly& g);

std::vector<std::uint64_t> prime_field_roots(const FpPoly& g);

// Lifts a simple root r of f mod p to a root mod p^n (Newton iteration).
Integer hensel_lift(const IntPoly& f, std::uint64_t r, std::uint64_t p, std::int64_t n);

}  // namespace motivic::padic
