#include "motivic/padic/truncated_ring.hpp"

#include <algorithm>

#include "motivic/error.hpp"

namespace motivic::padic {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

std::string to_string(RingMode mode) { return mode == RingMode::mixed ? "mixed" : "equal"; }

RingMode parse_ring_mode(std::string_view text) {
  if (text == "mixed") return RingMode::mixed;
  if (text == "equal") return RingMode::equal;
  throw Error(ErrorCode::parse_error, "unknown ring mode '" + std::string(text) + "'");
}

TruncatedRing::TruncatedRing(std::uint64_t p, std::int64_t f, std::int64_t n, RingMode mode)
    : p_(p), f_(f), n_(n), mode_(mode) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_input, std::to_string(p) + " is not prime");
  if (f < 1) throw Error(ErrorCode::invalid_degree, "extension degree must be >= 1");
  if (n < 1) throw Error(ErrorCode::invalid_input, "truncation level must be >= 1");
  if (words() > kMaxWords) {
    throw Error(ErrorCode::budget_exceeded, "truncated ring too large for fixed-width elements");
  }
  const Integer q = ipow(Integer(p), static_cast<std::uint64_t>(f));
  const Integer pn = ipow(Integer(p), static_cast<std::uint64_t>(n));
  if (q > Integer(1) << 62 || pn > Integer(1) << 62) {
    throw Error(ErrorCode::budget_exceeded, "truncated ring parameters exceed 62-bit arithmetic");
  }
  q_ = static_cast<std::uint64_t>(q);
  level_mod_ = mode == RingMode::mixed ? static_cast<std::uint64_t>(pn) : p;
  modulus_ = deterministic_irreducible(p, f);
  modulus_low_.assign(static_cast<std::size_t>(f), 0);
  for (std::int64_t i = 0; i < f; ++i) modulus_low_[static_cast<std::size_t>(i)] = modulus_.coeff(static_cast<std::size_t>(i));
}

TruncatedRing::Element TruncatedRing::one() const {
  Element e;
  e.w[0] = 1 % level_mod_;
  return e;
}

TruncatedRing::Element TruncatedRing::from_integer(const Integer& c) const {
  Element e;
  if (mode_ == RingMode::mixed) {
    Integer r = c % level_mod_;
    if (r < 0) r += level_mod_;
    e.w[0] = static_cast<std::uint64_t>(r);
    return e;
  }
  Integer mag = c < 0 ? Integer(-c) : c;
  for (std::int64_t k = 0; k < n_ && mag != 0; ++k) {
    e.w[static_cast<std::size_t>(k * f_)] = static_cast<std::uint64_t>(mag % p_);
    mag /= p_;
  }
  return c < 0 ? neg(e) : e;
}

TruncatedRing::Element TruncatedRing::from_index(std::uint64_t index) const {
  Element e;
  const std::size_t count = words();
  for (std::size_t i = 0; i < count; ++i) {
    e.w[i] = index % level_mod_;
    index /= level_mod_;
  }
  return e;
}

TruncatedRing::Element TruncatedRing::uniformizer() const {
  Element e;
  if (n_ == 1) return e;
  if (mode_ == RingMode::mixed) {
    e.w[0] = p_ % level_mod_;
  } else {
    e.w[static_cast<std::size_t>(f_)] = 1;
  }
  return e;
}

TruncatedRing::Element TruncatedRing::add(const Element& a, const Element& b) const {
  Element r;
  const std::size_t count = words();
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t s = a.w[i] + b.w[i];
    if (s >= level_mod_) s -= level_mod_;
    r.w[i] = s;
  }
  return r;
}

TruncatedRing::Element TruncatedRing::neg(const Element& a) const {
  Element r;
  const std::size_t count = words();
  for (std::size_t i = 0; i < count; ++i) r.w[i] = a.w[i] == 0 ? 0 : level_mod_ - a.w[i];
  return r;
}

TruncatedRing::Element TruncatedRing::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

void TruncatedRing::fq_mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  const auto f = static_cast<std::size_t>(f_);
  std::array<std::uint64_t, 2 * kMaxWords> prod{};
  for (std::size_t i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p_)) % p_;
  }
  for (std::size_t i = 2 * f - 1; i-- > f;) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j < f; ++j) {
      prod[i - f + j] = (prod[i - f + j] + p_ - mulmod(c, modulus_low_[j], p_)) % p_;
    }
  }
  std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(f), out);
}

TruncatedRing::Element TruncatedRing::mul(const Element& a, const Element& b) const {
  Element r;
  const auto f = static_cast<std::size_t>(f_);
  if (mode_ == RingMode::mixed) {
    const std::uint64_t m = level_mod_;
    std::array<std::uint64_t, 2 * kMaxWords> prod{};
    for (std::size_t i = 0; i < f; ++i) {
      if (a.w[i] == 0) continue;
      for (std::size_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + mulmod(a.w[i], b.w[j], m)) % m;
    }
    for (std::size_t i = 2 * f - 1; i-- > f;) {
      const std::uint64_t c = prod[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j < f; ++j) {
        prod[i - f + j] = (prod[i - f + j] + m - mulmod(c, modulus_low_[j], m)) % m;
      }
    }
    std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(f), r.w.begin());
    return r;
  }
  const auto n = static_cast<std::size_t>(n_);
  std::array<std::uint64_t, kMaxWords> tmp{};
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    const std::uint64_t* ablock = &a.w[k1 * f];
    if (std::all_of(ablock, ablock + f, [](std::uint64_t v) { return v == 0; })) continue;
    for (std::size_t k2 = 0; k1 + k2 < n; ++k2) {
      fq_mul(ablock, &b.w[k2 * f], tmp.data());
      std::uint64_t* dst = &r.w[(k1 + k2) * f];
      for (std::size_t i = 0; i < f; ++i) dst[i] = (dst[i] + tmp[i]) % p_;
    }
  }
  return r;
}

bool TruncatedRing::is_zero(const Element& a) const {
  const std::size_t count = words();
  for (std::size_t i = 0; i < count; ++i) {
    if (a.w[i] != 0) return false;
  }
  return true;
}

std::int64_t TruncatedRing::ord(const Element& a) const {
  if (mode_ == RingMode::mixed) {
    std::int64_t best = n_;
    for (std::size_t i = 0; i < static_cast<std::size_t>(f_); ++i) {
      std::uint64_t c = a.w[i];
      if (c == 0) continue;
      std::int64_t v = 0;
      while (c % p_ == 0) {
        c /= p_;
        ++v;
      }
      best = std::min(best, v);
    }
    return best;
  }
  const auto f = static_cast<std::size_t>(f_);
  for (std::int64_t k = 0; k < n_; ++k) {
    const std::uint64_t* block = &a.w[static_cast<std::size_t>(k) * f];
    if (std::any_of(block, block + f, [](std::uint64_t v) { return v != 0; })) return k;
  }
  return n_;
}

TruncatedRing::Element TruncatedRing::residue_digit(const Element& a, std::int64_t k) const {
  Element r;
  if (k >= n_) return r;
  const auto f = static_cast<std::size_t>(f_);
  if (mode_ == RingMode::mixed) {
    const auto pk = static_cast<std::uint64_t>(ipow(Integer(p_), static_cast<std::uint64_t>(k)));
    for (std::size_t i = 0; i < f; ++i) r.w[i] = (a.w[i] / pk) % p_;
    return r;
  }
  std::copy_n(&a.w[static_cast<std::size_t>(k) * f], f, r.w.begin());
  return r;
}

TruncatedRing::Element TruncatedRing::reduce_to(const Element& a, const TruncatedRing& lower) const {
  if (lower.p_ != p_ || lower.f_ != f_ || lower.mode_ != mode_ || lower.n_ > n_) {
    throw Error(ErrorCode::invalid_input, "incompatible truncation");
  }
  Element r;
  if (mode_ == RingMode::mixed) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(f_); ++i) r.w[i] = a.w[i] % lower.level_mod_;
  } else {
    std::copy_n(a.w.begin(), lower.words(), r.w.begin());
  }
  return r;
}

TruncatedRing::Element TruncatedRing::eval(const IntPoly& f, const Element& x) const {
  Element acc;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = add(mul(acc, x), from_integer(f.coeffs()[i]));
  return acc;
}

TruncatedRing::Element TruncatedRing::eval(const FpPoly& f, const Element& x) const {
  Element acc;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = add(mul(acc, x), from_integer(Integer(f.coeffs()[i])));
  return acc;
}

std::string TruncatedRing::to_string(const Element& a) const {
  std::string out = "(";
  for (std::size_t i = 0; i < words(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(a.w[i]);
  }
  return out + ")";
}

MultiPoly MultiPoly::from_univariate(const IntPoly& f) {
  MultiPoly m;
  m.vars = 1;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i] != 0) m.terms.push_back({{static_cast<std::uint32_t>(i)}, f.coeffs()[i]});
  }
  return m;
}

TruncatedRing::Element MultiPoly::eval(const TruncatedRing& ring,
                                       std::span<const TruncatedRing::Element> x) const {
  if (x.size() != vars) throw Error(ErrorCode::unsupported_arity, "point dimension does not match polynomial");
  TruncatedRing::Element acc = ring.zero();
  for (const auto& [exps, c] : terms) {
    TruncatedRing::Element term = ring.from_integer(c);
    for (std::size_t v = 0; v < vars; ++v) {
      for (std::uint32_t e = 0; e < exps[v]; ++e) term = ring.mul(term, x[v]);
    }
    acc = ring.add(acc, term);
  }
  return acc;
}

}  // namespace motivic::padic
