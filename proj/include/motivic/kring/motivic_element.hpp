#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "motivic/kring/laurent_rational.hpp"
#include "motivic/numeric.hpp"

namespace motivic::padic {
class FpPoly;
}

namespace motivic::kring {

class EffectivityCertificate;

// Finite Z-combination of etale atoms [Spec F_{p^a}] with coefficients in the
// localisation of Z[L] at L and L^k - 1. atom(1) is the unit. Atoms of
// distinct degree are independent, so the canonical map below is a basis
// expansion and equality is structural.
//
// An element may carry an effectivity certificate; add and mul propagate it
// when both operands have one, every other operation drops it.
class MotivicElement {
 public:
  using Terms = std::map<std::int64_t, LaurentRational>;

  // Zero, with the empty certificate.
  MotivicElement();
  MotivicElement(long long c) : MotivicElement(Integer(c)) {}  // NOLINT
  MotivicElement(const Integer& c);                             // NOLINT
  MotivicElement(const LaurentRational& c);                     // NOLINT

  static MotivicElement atom(std::int64_t degree);
  static MotivicElement lefschetz(std::int64_t power = 1);
  // No certificate attached.
  static MotivicElement from_terms(Terms terms);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Coefficient of atom(a); zero when absent.
  LaurentRational coefficient(std::int64_t atom_degree) const;

  const std::shared_ptr<const EffectivityCertificate>& certificate() const { return cert_; }
  bool has_certificate() const { return cert_ != nullptr; }
  // Attaches a certificate after checking that it sums to this element.
  MotivicElement with_certificate(std::shared_ptr<const EffectivityCertificate> cert) const;
  MotivicElement without_certificate() const;

  MotivicElement operator-() const;
  friend MotivicElement operator+(const MotivicElement& a, const MotivicElement& b);
  friend MotivicElement operator-(const MotivicElement& a, const MotivicElement& b);
  friend MotivicElement operator*(const MotivicElement& a, const MotivicElement& b);
  // Divisor must be a unit of the unit-atom part (no other atoms).
  friend MotivicElement operator/(const MotivicElement& a, const MotivicElement& b);
  MotivicElement& operator+=(const MotivicElement& b) { return *this = *this + b; }
  MotivicElement& operator*=(const MotivicElement& b) { return *this = *this * b; }

  // Structural equality; certificates are ignored.
  friend bool operator==(const MotivicElement& a, const MotivicElement& b) { return a.terms_ == b.terms_; }

  // Multiply by L^k; a certificate is shifted along.
  MotivicElement times_lefschetz(std::int64_t k) const;

  Dimension dimension() const;

  // Upper bound W on w_n for every n, read off the Laurent expansion: the
  // term atom(a) * c * L^i contributes a*|c| at weight 2i. nullopt when some
  // expansion is not eventually periodic (coefficients grow).
  std::optional<Integer> weight_sup_bound() const;
  // The same bound at a single weight n (0 for odd n).
  Integer weight_bound_at(std::int64_t n) const;
  // weight_bound_at(2j) for j = high, high - 1, ..., low.
  std::vector<Integer> weight_profile(std::int64_t low, std::int64_t high) const;

  // Point count at q = p^f: atom(a) -> a if a | f else 0, L -> q.
  Rational count(std::uint64_t p, std::int64_t f) const;

  std::string to_string() const;

 private:
  Terms terms_;
  std::shared_ptr<const EffectivityCertificate> cert_;
};

// Class of Spec F_p[X]/(g) for squarefree g: sum of atom(deg h) over the
// irreducible factors h of g.
MotivicElement class_of_zero_dim(const padic::FpPoly& g);

}  // namespace motivic::kring
