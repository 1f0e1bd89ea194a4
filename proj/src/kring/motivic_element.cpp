#include "motivic/kring/motivic_element.hpp"

#include <algorithm>

#include "motivic/error.hpp"
#include "motivic/kring/effectivity.hpp"
#include "motivic/padic/fp_poly.hpp"

namespace motivic::kring {

namespace {

std::shared_ptr<const EffectivityCertificate> single_part(std::int64_t atom, std::int64_t shift, const Integer& mult) {
  std::vector<CertificatePart> parts;
  if (mult != 0) {
    CertificatePart part;
    part.atom = atom;
    part.shift = shift;
    part.multiplicity = mult;
    parts.push_back(std::move(part));
  }
  return std::make_shared<const EffectivityCertificate>(std::move(parts));
}

void accumulate(MotivicElement::Terms& terms, std::int64_t atom, const LaurentRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(atom, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

MotivicElement::MotivicElement() : cert_(std::make_shared<const EffectivityCertificate>()) {}

MotivicElement::MotivicElement(const Integer& c) {
  if (c != 0) terms_.emplace(1, LaurentRational(c));
  if (c >= 0) cert_ = single_part(1, 0, c);
}

MotivicElement::MotivicElement(const LaurentRational& c) {
  if (!c.is_zero()) terms_.emplace(1, c);
}

MotivicElement MotivicElement::atom(std::int64_t degree) {
  if (degree < 1) throw Error(ErrorCode::invalid_degree, "atom degree must be >= 1, got " + std::to_string(degree));
  MotivicElement x;
  x.terms_.emplace(degree, LaurentRational(1));
  x.cert_ = single_part(degree, 0, 1);
  return x;
}

MotivicElement MotivicElement::lefschetz(std::int64_t power) {
  MotivicElement x;
  x.terms_.emplace(1, LaurentRational::lefschetz_power(power));
  x.cert_ = single_part(1, power, 1);
  return x;
}

MotivicElement MotivicElement::from_terms(Terms terms) {
  MotivicElement x;
  x.cert_.reset();
  for (auto& [a, c] : terms) {
    if (a < 1) throw Error(ErrorCode::invalid_degree, "atom degree must be >= 1");
    if (!c.is_zero()) x.terms_.emplace(a, std::move(c));
  }
  return x;
}

LaurentRational MotivicElement::coefficient(std::int64_t atom_degree) const {
  const auto it = terms_.find(atom_degree);
  return it == terms_.end() ? LaurentRational() : it->second;
}

MotivicElement MotivicElement::with_certificate(std::shared_ptr<const EffectivityCertificate> cert) const {
  if (!cert) throw Error(ErrorCode::internal, "null certificate");
  if (cert->value() != *this) {
    throw Error(ErrorCode::internal, "certificate sums to " + cert->value().to_string() + ", not " + to_string());
  }
  MotivicElement x = *this;
  x.cert_ = std::move(cert);
  return x;
}

MotivicElement MotivicElement::without_certificate() const {
  MotivicElement x = *this;
  x.cert_.reset();
  return x;
}

MotivicElement MotivicElement::operator-() const {
  MotivicElement x;
  x.cert_.reset();
  for (const auto& [a, c] : terms_) x.terms_.emplace(a, -c);
  if (x.terms_.empty()) x.cert_ = cert_;
  return x;
}

MotivicElement operator+(const MotivicElement& a, const MotivicElement& b) {
  MotivicElement r = a.without_certificate();
  for (const auto& [atom, c] : b.terms_) accumulate(r.terms_, atom, c);
  if (a.cert_ && b.cert_) r.cert_ = std::make_shared<const EffectivityCertificate>(*a.cert_ + *b.cert_);
  return r;
}

MotivicElement operator-(const MotivicElement& a, const MotivicElement& b) {
  MotivicElement r = a.without_certificate();
  for (const auto& [atom, c] : b.terms_) accumulate(r.terms_, atom, -c);
  if (b.is_zero()) r.cert_ = a.cert_;
  return r;
}

MotivicElement operator*(const MotivicElement& a, const MotivicElement& b) {
  MotivicElement r;
  r.cert_.reset();
  for (const auto& [x, cx] : a.terms_) {
    for (const auto& [y, cy] : b.terms_) {
      const auto g = static_cast<std::int64_t>(gcd_u64(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y)));
      accumulate(r.terms_, lcm_i64(x, y), cx * cy * LaurentRational(g));
    }
  }
  if (a.cert_ && b.cert_) r.cert_ = std::make_shared<const EffectivityCertificate>(*a.cert_ * *b.cert_);
  return r;
}

MotivicElement operator/(const MotivicElement& a, const MotivicElement& b) {
  if (b.is_zero()) throw Error(ErrorCode::division_by_zero, "division by zero");
  if (b.terms_.size() != 1 || b.terms_.begin()->first != 1) {
    throw Error(ErrorCode::unsupported_denominator, "divisor " + b.to_string() + " involves non-unit atoms");
  }
  return a.without_certificate() * MotivicElement(b.terms_.begin()->second.inverse());
}

MotivicElement MotivicElement::times_lefschetz(std::int64_t k) const {
  MotivicElement r;
  r.cert_.reset();
  const LaurentRational shift = LaurentRational::lefschetz_power(k);
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, c * shift);
  if (cert_) r.cert_ = std::make_shared<const EffectivityCertificate>(cert_->shifted(k));
  return r;
}

Dimension MotivicElement::dimension() const {
  Dimension best = Dimension::neg_inf();
  for (const auto& [a, c] : terms_) best = std::max(best, c.dimension());
  return best;
}

std::optional<Integer> MotivicElement::weight_sup_bound() const {
  if (terms_.empty()) return Integer(0);
  std::vector<std::pair<std::int64_t, LaurentExpansion>> expansions;
  for (const auto& [a, c] : terms_) {
    if (!c.has_periodic_expansion()) return std::nullopt;
    expansions.emplace_back(a, c.expansion());
  }
  std::int64_t top = std::numeric_limits<std::int64_t>::min();
  std::int64_t low = std::numeric_limits<std::int64_t>::max();
  std::int64_t period = 1;
  for (const auto& [a, ex] : expansions) {
    top = std::max(top, ex.period != 0 ? std::max(ex.head_top, ex.head_low - 1) : ex.head_top);
    low = std::min(low, ex.head_low);
    if (ex.period != 0) period = lcm_i64(period, ex.period);
  }
  // Below `low` every expansion is purely periodic, so one joint period suffices.
  Integer best = 0;
  for (std::int64_t j = top; j >= low - period; --j) {
    Integer w = 0;
    for (const auto& [a, ex] : expansions) w += Integer(a) * boost::multiprecision::abs(ex.coeff(j));
    best = std::max(best, w);
  }
  return best;
}

Integer MotivicElement::weight_bound_at(std::int64_t n) const {
  if (n % 2 != 0) return 0;
  Integer w = 0;
  for (const auto& [a, c] : terms_) w += Integer(a) * boost::multiprecision::abs(c.coefficient(n / 2));
  return w;
}

std::vector<Integer> MotivicElement::weight_profile(std::int64_t low, std::int64_t high) const {
  std::vector<Integer> out(high >= low ? static_cast<std::size_t>(high - low + 1) : 0);
  for (const auto& [a, c] : terms_) {
    const auto coeffs = c.coefficients(low, high);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += Integer(a) * boost::multiprecision::abs(coeffs[i]);
  }
  return out;
}

Rational MotivicElement::count(std::uint64_t p, std::int64_t f) const {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_input, std::to_string(p) + " is not prime");
  if (f < 1) throw Error(ErrorCode::invalid_degree, "extension degree must be >= 1");
  const Rational q(ipow(Integer(p), static_cast<std::uint64_t>(f)));
  Rational total = 0;
  for (const auto& [a, c] : terms_) {
    if (f % a == 0) total += Rational(a) * c.evaluate(q);
  }
  return total;
}

std::string MotivicElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [a, c] : terms_) {
    std::string piece = c.to_string();
    if (a != 1) {
      const bool simple = c == LaurentRational(1);
      piece = simple ? "[" + std::to_string(a) + "]" : "[" + std::to_string(a) + "]*(" + piece + ")";
    }
    if (!out.empty()) out += " + ";
    out += piece;
  }
  return out;
}

MotivicElement class_of_zero_dim(const padic::FpPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::invalid_input, "zero polynomial has no zero-dimensional class");
  MotivicElement x;
  if (g.degree() == 0) return x;
  for (auto [d, n] : padic::distinct_degree_profile(g)) x += MotivicElement::atom(d) * MotivicElement(Integer(n));
  return x;
}

}  // namespace motivic::kring
