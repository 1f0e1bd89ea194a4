#include "motivic/kring/effectivity.hpp"

#include <algorithm>
#include <array>

#include "motivic/error.hpp"

namespace motivic::kring {

namespace {

MotivicElement geometric_factor(std::int64_t period) {
  // 1 / (1 - L^{-P}) = L^P / (L^P - 1)
  std::map<std::int64_t, std::int64_t> cyclo;
  for (std::int64_t d = 1; d <= period; ++d) {
    if (period % d == 0) cyclo[d] = 1;
  }
  return MotivicElement(LaurentRational::make(IntPoly::constant(1).shifted(static_cast<std::size_t>(period)), 0, cyclo));
}

struct Run {
  std::int64_t exponent;
  Integer count;
};

// Greedy matching of a finite coefficient run (listed from the top exponent
// down) into L^j and (L^k - 1) L^j pieces. Succeeds iff every prefix sum is
// nonnegative.
std::optional<std::vector<CertificatePart>> decompose_run(std::int64_t atom, std::int64_t top,
                                                         const std::vector<Integer>& coeffs) {
  std::vector<CertificatePart> parts;
  std::vector<Run> stack;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::int64_t j = top - static_cast<std::int64_t>(i);
    const Integer& c = coeffs[i];
    if (c > 0) {
      stack.push_back({j, c});
    } else if (c < 0) {
      Integer need = -c;
      while (need > 0) {
        if (stack.empty()) return std::nullopt;
        Run& above = stack.back();
        const Integer take = std::min(need, above.count);
        CertificatePart part;
        part.atom = atom;
        part.factors.push_back(CertificateFactor::cyclotomic(above.exponent - j));
        part.shift = j;
        part.multiplicity = take;
        parts.push_back(std::move(part));
        need -= take;
        above.count -= take;
        if (above.count == 0) stack.pop_back();
      }
    }
  }
  for (const Run& r : stack) {
    CertificatePart part;
    part.atom = atom;
    part.shift = r.exponent;
    part.multiplicity = r.count;
    parts.push_back(std::move(part));
  }
  return parts;
}

std::optional<std::vector<CertificatePart>> decompose_periodic(std::int64_t atom, const LaurentRational& c) {
  const LaurentExpansion ex = c.expansion();
  if (ex.period == 0) return decompose_run(atom, ex.head_top, ex.head);
  const std::int64_t top = std::max(ex.head_top, ex.head_low - 1);
  for (std::int64_t r = 0; r < ex.period; ++r) {
    const std::int64_t split = ex.head_low - r;  // lowest exponent of the finite part
    std::vector<Integer> head;
    for (std::int64_t j = top; j >= split; --j) head.push_back(ex.coeff(j));
    std::vector<Integer> block;
    for (std::int64_t j = split - 1; j >= split - ex.period; --j) block.push_back(ex.coeff(j));
    auto finite = decompose_run(atom, top, head);
    if (!finite) continue;
    auto tail = decompose_run(atom, split - 1, block);
    if (!tail) continue;
    for (auto& part : *tail) {
      part.periods.push_back(ex.period);
      finite->push_back(std::move(part));
    }
    return finite;
  }
  return std::nullopt;
}

std::optional<std::vector<CertificatePart>> decompose(std::int64_t atom, const LaurentRational& c, int depth) {
  if (c.has_periodic_expansion()) {
    if (auto parts = decompose_periodic(atom, c)) return parts;
  } else if (depth > 0) {
    // Clear one repeated cyclotomic factor: c = c' / (L^d - 1), c' = c (L^d - 1).
    std::int64_t d = 0;
    for (auto [k, e] : c.cyclotomic_exponents()) {
      if (e >= 2) d = k;
    }
    const LaurentRational cleared = c * LaurentRational::polynomial(lefschetz_minus_one(d));
    if (auto parts = decompose(atom, cleared, depth - 1)) {
      for (auto& part : *parts) {
        part.shift -= d;
        part.periods.push_back(d);
      }
      return parts;
    }
    return std::nullopt;
  }
  if (depth == 0) return std::nullopt;
  // c = (L - 1) c'; the quotient keeps a periodic expansion only if L - 1 divides c.
  const LaurentRational quotient = c * LaurentRational::polynomial(lefschetz_minus_one(1)).inverse();
  if (!quotient.has_periodic_expansion()) return std::nullopt;
  auto parts = decompose(atom, quotient, depth - 1);
  if (!parts) return std::nullopt;
  for (auto& part : *parts) part.factors.push_back(CertificateFactor::cyclotomic(1));
  return parts;
}

// P(L) = sum_i R_i (L - 1)^i L^{-b} with R_i >= 0, for the smallest b <= kMaxPolyaShift.
// By Polya's theorem such b exists when P(T + 1) / T^m is positive on [0, inf).
constexpr std::int64_t kMaxPolyaShift = 256;

std::optional<std::vector<CertificatePart>> decompose_polya(std::int64_t atom, const LaurentRational& c) {
  const auto pf = c.product_form();
  // Taylor shift: coefficients of P(T + 1).
  std::vector<Integer> q = pf.numerator.coeffs();
  const std::size_t n = q.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) q[j - 1] += q[j];
  }
  std::size_t low = 0;
  while (low < q.size() && q[low] == 0) ++low;
  if (low == q.size() || q[low] < 0 || q.back() < 0) return std::nullopt;
  std::int64_t b = 0;
  auto nonnegative = [&q] { return std::all_of(q.begin(), q.end(), [](const Integer& x) { return x >= 0; }); };
  while (!nonnegative()) {
    if (++b > kMaxPolyaShift) return std::nullopt;
    q.push_back(0);
    for (std::size_t j = q.size() - 1; j > 0; --j) q[j] += q[j - 1];
  }
  std::int64_t shift = -(b + pf.l_power);
  for (std::int64_t k : pf.cyclo) shift -= k;
  std::vector<CertificatePart> parts;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    CertificatePart part;
    part.atom = atom;
    part.factors.assign(i, CertificateFactor::cyclotomic(1));
    part.shift = shift;
    part.multiplicity = q[i];
    part.periods = pf.cyclo;
    parts.push_back(std::move(part));
  }
  return parts;
}

constexpr int kMaxDepth = 3;
constexpr std::array<std::uint64_t, 4> kProbePrimes = {2, 3, 5, 7};
constexpr std::int64_t kProbeMaxF = 4;

}  // namespace

CertificateFactor CertificateFactor::complement(std::int64_t ambient_dim, MotivicElement removed) {
  return {Kind::complement, ambient_dim, std::make_shared<const MotivicElement>(std::move(removed))};
}

MotivicElement CertificateFactor::value() const {
  const MotivicElement ambient = MotivicElement::lefschetz(k).without_certificate();
  if (kind == Kind::cyclotomic) return ambient - MotivicElement(1);
  return ambient - *removed;
}

bool CertificateFactor::operator==(const CertificateFactor& other) const {
  if (kind != other.kind || k != other.k) return false;
  if (kind == Kind::cyclotomic) return true;
  return *removed == *other.removed;
}

MotivicElement CertificatePart::value() const {
  MotivicElement v = MotivicElement::atom(atom).without_certificate() * MotivicElement(multiplicity);
  for (const auto& f : factors) v = v * f.value();
  v = v.times_lefschetz(shift);
  for (std::int64_t p : periods) v = v * geometric_factor(p);
  return v.without_certificate();
}

MotivicElement EffectivityCertificate::value() const {
  MotivicElement total = MotivicElement().without_certificate();
  for (const auto& part : parts_) total = total + part.value();
  return total;
}

EffectivityCertificate EffectivityCertificate::shifted(std::int64_t k) const {
  EffectivityCertificate r = *this;
  for (auto& part : r.parts_) part.shift += k;
  return r;
}

EffectivityCertificate EffectivityCertificate::with_period(std::int64_t period) const {
  if (period < 1) throw Error(ErrorCode::invalid_ratio, "period must be >= 1");
  EffectivityCertificate r = *this;
  for (auto& part : r.parts_) part.periods.push_back(period);
  return r;
}

EffectivityCertificate operator+(const EffectivityCertificate& a, const EffectivityCertificate& b) {
  std::vector<CertificatePart> parts = a.parts_;
  parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
  return EffectivityCertificate(std::move(parts));
}

EffectivityCertificate operator*(const EffectivityCertificate& a, const EffectivityCertificate& b) {
  std::vector<CertificatePart> parts;
  parts.reserve(a.parts_.size() * b.parts_.size());
  for (const auto& x : a.parts_) {
    for (const auto& y : b.parts_) {
      CertificatePart p;
      const auto g = static_cast<std::int64_t>(gcd_u64(static_cast<std::uint64_t>(x.atom), static_cast<std::uint64_t>(y.atom)));
      p.atom = lcm_i64(x.atom, y.atom);
      p.multiplicity = x.multiplicity * y.multiplicity * g;
      p.factors = x.factors;
      p.factors.insert(p.factors.end(), y.factors.begin(), y.factors.end());
      p.shift = x.shift + y.shift;
      p.periods = x.periods;
      p.periods.insert(p.periods.end(), y.periods.begin(), y.periods.end());
      parts.push_back(std::move(p));
    }
  }
  return EffectivityCertificate(std::move(parts));
}

std::string EffectivityCertificate::to_string() const {
  if (parts_.empty()) return "0";
  std::string out;
  for (const auto& part : parts_) {
    std::string s = motivic::to_string(part.multiplicity);
    if (part.atom != 1) s += "*[" + std::to_string(part.atom) + "]";
    for (const auto& f : part.factors) {
      if (f.kind == CertificateFactor::Kind::cyclotomic) {
        s += "*(L^" + std::to_string(f.k) + " - 1)";
      } else {
        s += "*(L^" + std::to_string(f.k) + " - (" + f.removed->to_string() + "))";
      }
    }
    if (part.shift != 0) s += "*L^" + std::to_string(part.shift);
    for (std::int64_t p : part.periods) s += "/(1 - L^-" + std::to_string(p) + ")";
    if (!out.empty()) out += " + ";
    out += s;
  }
  return out;
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::yes: return "yes";
    case Truth::unknown: return "unknown";
    case Truth::no: return "no";
  }
  return "unknown";
}

EffectivityResult certify_effective(const MotivicElement& x) {
  EffectivityResult result;
  if (x.has_certificate()) {
    result.status = EffectivityResult::Status::certified;
    result.certificate = *x.certificate();
    return result;
  }
  std::vector<CertificatePart> parts;
  bool ok = true;
  for (const auto& [atom, c] : x.terms()) {
    auto piece = decompose(atom, c, kMaxDepth);
    if (!piece) piece = decompose_polya(atom, c);
    if (!piece) {
      ok = false;
      break;
    }
    parts.insert(parts.end(), piece->begin(), piece->end());
  }
  if (ok) {
    EffectivityCertificate cert(std::move(parts));
    if (cert.value() != x) {
      throw Error(ErrorCode::internal, "decomposition of " + x.to_string() + " does not sum back");
    }
    result.status = EffectivityResult::Status::certified;
    result.certificate = std::move(cert);
    return result;
  }
  for (std::uint64_t p : kProbePrimes) {
    for (std::int64_t f = 1; f <= kProbeMaxF; ++f) {
      if (x.count(p, f) < 0) {
        result.status = EffectivityResult::Status::negative;
        result.witness = std::make_pair(p, f);
        return result;
      }
    }
  }
  return result;
}

MotivicElement complement_class(std::int64_t k, const MotivicElement& removed) {
  const MotivicElement value = MotivicElement::lefschetz(k).without_certificate() - removed;
  if (value.is_zero()) return MotivicElement();
  CertificatePart part;
  part.factors.push_back(CertificateFactor::complement(k, removed.without_certificate()));
  return value.with_certificate(std::make_shared<const EffectivityCertificate>(std::vector{part}));
}

MotivicElement certified(const MotivicElement& x) {
  if (x.has_certificate()) return x;
  EffectivityResult r = certify_effective(x);
  if (r.status != EffectivityResult::Status::certified) {
    throw Error(ErrorCode::uncertified_coefficient,
                "no effectivity certificate for " + x.to_string() +
                    (r.status == EffectivityResult::Status::negative ? " (negative point count)" : ""));
  }
  return x.with_certificate(std::make_shared<const EffectivityCertificate>(std::move(*r.certificate)));
}

Truth leq(const MotivicElement& x, const MotivicElement& y) {
  switch (certify_effective(y - x).status) {
    case EffectivityResult::Status::certified: return Truth::yes;
    case EffectivityResult::Status::negative: return Truth::no;
    case EffectivityResult::Status::unknown: return Truth::unknown;
  }
  return Truth::unknown;
}

}  // namespace motivic::kring
