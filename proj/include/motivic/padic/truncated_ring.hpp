#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "motivic/numeric.hpp"
#include "motivic/padic/fp_poly.hpp"
#include "motivic/poly.hpp"

namespace motivic::padic {

enum class RingMode { mixed, equal };

std::string to_string(RingMode mode);
RingMode parse_ring_mode(std::string_view text);

// W_n(F_q) realised as the Galois ring (Z/p^n)[x]/(modulus) in mixed mode,
// or F_q[t]/(t^n) in equal mode. q = p^f, modulus is the deterministic
// irreducible of degree f over F_p (lifted coefficientwise in mixed mode).
//
// Element layout: mixed mode stores f coordinates in Z/p^n; equal mode stores
// n blocks of f coordinates in F_p, block k holding the t^k coefficient.
class TruncatedRing {
 public:
  static constexpr std::size_t kMaxWords = 32;

  struct Element {
    std::array<std::uint64_t, kMaxWords> w{};
    friend bool operator==(const Element&, const Element&) = default;
  };

  TruncatedRing(std::uint64_t p, std::int64_t f, std::int64_t n, RingMode mode = RingMode::mixed);

  std::uint64_t p() const { return p_; }
  std::int64_t f() const { return f_; }
  std::int64_t n() const { return n_; }
  RingMode mode() const { return mode_; }
  const FpPoly& modulus() const { return modulus_; }
  // Residue field size p^f.
  std::uint64_t q() const { return q_; }
  // Number of elements q^n.
  Integer size() const { return ipow(Integer(q_), static_cast<std::uint64_t>(n_)); }

  // The level-1 quotient F_q, with the same coordinates.
  TruncatedRing residue_field() const { return TruncatedRing(p_, f_, 1, mode_); }
  // Same residue field, different truncation level.
  TruncatedRing with_level(std::int64_t n) const { return TruncatedRing(p_, f_, n, mode_); }

  Element zero() const { return Element{}; }
  Element one() const;
  // Mixed: c mod p^n. Equal: base-p digits of |c| placed on t^0, t^1, ...
  // with the sign of c (p maps to t).
  Element from_integer(const Integer& c) const;
  // Bijection [0, q^n) -> ring; residue digits vary fastest in equal mode.
  Element from_index(std::uint64_t index) const;
  // Uniformizer p (mixed) or t (equal).
  Element uniformizer() const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;

  bool is_zero(const Element& a) const;
  // Valuation; n() when the element is zero.
  std::int64_t ord(const Element& a) const;
  // For ord(a) >= k: the residue of a / uniformizer^k, as an element of
  // residue_field().
  Element residue_digit(const Element& a, std::int64_t k) const;
  // Reduction to a lower level (coordinates carried over).
  Element reduce_to(const Element& a, const TruncatedRing& lower) const;

  Element eval(const IntPoly& f, const Element& x) const;
  Element eval(const FpPoly& f, const Element& x) const;

  std::string to_string(const Element& a) const;

 private:
  std::size_t words() const { return mode_ == RingMode::mixed ? static_cast<std::size_t>(f_) : static_cast<std::size_t>(f_ * n_); }
  // Multiply two residue-field vectors (f coordinates mod p) into out.
  void fq_mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;

  std::uint64_t p_;
  std::int64_t f_;
  std::int64_t n_;
  RingMode mode_;
  FpPoly modulus_;
  std::uint64_t q_;
  std::uint64_t level_mod_;  // p^n in mixed mode, p in equal mode
  std::vector<std::uint64_t> modulus_low_;  // modulus coefficients 0..f-1
};

// Sparse multivariate integer polynomial.
struct MultiPoly {
  std::size_t vars = 1;
  std::vector<std::pair<std::vector<std::uint32_t>, Integer>> terms;

  static MultiPoly from_univariate(const IntPoly& f);
  TruncatedRing::Element eval(const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) const;
};

}  // namespace motivic::padic
