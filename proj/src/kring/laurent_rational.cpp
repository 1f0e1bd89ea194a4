#include "motivic/kring/laurent_rational.hpp"

#include <algorithm>

#include "motivic/error.hpp"

namespace motivic::kring {

namespace {

IntPoly power(const IntPoly& base, std::int64_t e) {
  IntPoly r = IntPoly::constant(1);
  for (std::int64_t i = 0; i < e; ++i) r = r * base;
  return r;
}

Integer floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Integer LaurentExpansion::coeff(std::int64_t j) const {
  if (j > head_top) return 0;
  if (j >= head_low) return head[static_cast<std::size_t>(head_top - j)];
  if (period == 0) return 0;
  const auto k = static_cast<std::size_t>(floor_mod(head_low - 1 - j, period));
  return block[k];
}

LaurentRational::LaurentRational(const Integer& c) : num_(IntPoly::constant(c)) {}

LaurentRational LaurentRational::lefschetz_power(std::int64_t k) {
  LaurentRational r(1);
  r.l_power_ = -k;
  return r;
}

LaurentRational LaurentRational::polynomial(const IntPoly& numerator) { return make(numerator, 0, {}); }

LaurentRational LaurentRational::make(IntPoly numerator, std::int64_t l_power,
                                      std::map<std::int64_t, std::int64_t> cyclotomic_exponents) {
  LaurentRational r;
  r.num_ = std::move(numerator);
  r.l_power_ = l_power;
  for (auto [d, e] : cyclotomic_exponents) {
    if (d < 1 || e < 0) throw Error(ErrorCode::internal, "bad cyclotomic exponent");
    if (e > 0) r.cyclo_[d] = e;
  }
  r.normalize();
  return r;
}

void LaurentRational::normalize() {
  if (num_.is_zero()) {
    l_power_ = 0;
    cyclo_.clear();
    return;
  }
  const std::size_t k = num_.low_order();
  if (k > 0) {
    num_ = num_.unshifted(k);
    l_power_ -= static_cast<std::int64_t>(k);
  }
  for (auto it = cyclo_.begin(); it != cyclo_.end();) {
    const IntPoly phi = cyclotomic(it->first);
    while (it->second > 0) {
      auto [quo, rem] = num_.divmod_monic(phi);
      if (!rem.is_zero()) break;
      num_ = std::move(quo);
      --it->second;
    }
    it = it->second == 0 ? cyclo_.erase(it) : std::next(it);
  }
}

IntPoly LaurentRational::denominator_without_l() const {
  IntPoly d = IntPoly::constant(1);
  for (auto [k, e] : cyclo_) d = d * power(cyclotomic(k), e);
  return d;
}

LaurentRational LaurentRational::operator-() const {
  LaurentRational r = *this;
  r.num_ = -r.num_;
  return r;
}

LaurentRational operator+(const LaurentRational& a, const LaurentRational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t lp = std::max(a.l_power_, b.l_power_);
  std::map<std::int64_t, std::int64_t> common = a.cyclo_;
  for (auto [d, e] : b.cyclo_) common[d] = std::max(common[d], e);
  auto lift = [&](const LaurentRational& x) {
    IntPoly n = x.num_.shifted(static_cast<std::size_t>(lp - x.l_power_));
    for (auto [d, e] : common) {
      const auto it = x.cyclo_.find(d);
      const std::int64_t have = it == x.cyclo_.end() ? 0 : it->second;
      if (e > have) n = n * power(cyclotomic(d), e - have);
    }
    return n;
  };
  LaurentRational r;
  r.num_ = lift(a) + lift(b);
  r.l_power_ = lp;
  r.cyclo_ = std::move(common);
  r.normalize();
  return r;
}

LaurentRational operator*(const LaurentRational& a, const LaurentRational& b) {
  if (a.is_zero() || b.is_zero()) return {};
  LaurentRational r;
  r.num_ = a.num_ * b.num_;
  r.l_power_ = a.l_power_ + b.l_power_;
  r.cyclo_ = a.cyclo_;
  for (auto [d, e] : b.cyclo_) r.cyclo_[d] += e;
  r.normalize();
  return r;
}

bool LaurentRational::is_unit() const {
  try {
    (void)inverse();
    return true;
  } catch (const Error&) {
    return false;
  }
}

LaurentRational LaurentRational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::division_by_zero, "division by zero");
  IntPoly rest = num_;
  std::map<std::int64_t, std::int64_t> factors;
  const std::int64_t deg0 = rest.degree();
  // phi(d) >= sqrt(d/2), so no cyclotomic factor of degree <= deg0 has d beyond this.
  const std::int64_t bound = 2 * deg0 * deg0 + 2;
  for (std::int64_t d = 1; d <= bound && rest.degree() > 0; ++d) {
    if (euler_phi(d) > rest.degree()) continue;
    const IntPoly phi = cyclotomic(d);
    while (rest.degree() >= phi.degree()) {
      auto [quo, rem] = rest.divmod_monic(phi);
      if (!rem.is_zero()) break;
      rest = std::move(quo);
      ++factors[d];
    }
  }
  if (rest.degree() != 0 || (rest.leading() != 1 && rest.leading() != -1)) {
    throw Error(ErrorCode::unsupported_denominator,
                "cannot invert " + to_string() + ": numerator leaves the multiplicative set");
  }
  IntPoly num = denominator_without_l() * rest.leading();
  return make(std::move(num), -l_power_, std::move(factors));
}

Dimension LaurentRational::dimension() const {
  if (is_zero()) return Dimension::neg_inf();
  std::int64_t den = l_power_;
  for (auto [d, e] : cyclo_) den += e * euler_phi(d);
  return num_.degree() - den;
}

bool LaurentRational::has_periodic_expansion() const {
  return std::all_of(cyclo_.begin(), cyclo_.end(), [](const auto& kv) { return kv.second <= 1; });
}

LaurentExpansion LaurentRational::expansion() const {
  if (!has_periodic_expansion()) {
    throw Error(ErrorCode::internal, "expansion of " + to_string() + " is not eventually periodic");
  }
  LaurentExpansion ex;
  if (is_zero()) {
    ex.head_top = -1;
    ex.head_low = 0;
    return ex;
  }
  if (cyclo_.empty()) {
    ex.head_low = -l_power_;
    ex.head_top = num_.degree() - l_power_;
    for (std::int64_t i = num_.degree(); i >= 0; --i) ex.head.push_back(num_.coeff(static_cast<std::size_t>(i)));
    return ex;
  }
  std::int64_t period = 1;
  for (auto [d, e] : cyclo_) period = lcm_i64(period, d);
  IntPoly scaled = num_;
  for (std::int64_t d = 1; d <= period; ++d) {
    if (period % d == 0 && !cyclo_.contains(d)) scaled = scaled * cyclotomic(d);
  }
  auto [quo, rem] = scaled.divmod_monic(lefschetz_minus_one(period));
  ex.head_low = -l_power_;
  ex.head_top = quo.is_zero() ? ex.head_low - 1 : quo.degree() - l_power_;
  for (std::int64_t i = quo.degree(); i >= 0; --i) ex.head.push_back(quo.coeff(static_cast<std::size_t>(i)));
  ex.period = period;
  ex.block.resize(static_cast<std::size_t>(period));
  for (std::int64_t k = 0; k < period; ++k) {
    ex.block[static_cast<std::size_t>(k)] = rem.coeff(static_cast<std::size_t>(period - 1 - k));
  }
  return ex;
}

Integer LaurentRational::coefficient(std::int64_t j) const { return coefficients(j, j).front(); }

std::vector<Integer> LaurentRational::coefficients(std::int64_t low, std::int64_t high) const {
  if (high < low) return {};
  std::vector<Integer> out(static_cast<std::size_t>(high - low + 1));
  if (is_zero()) return out;
  const IntPoly den = denominator_without_l();
  const std::int64_t n = num_.degree();
  const std::int64_t delta = den.degree();
  const std::int64_t top = n - delta - l_power_;
  const std::int64_t k = top - low;
  if (k < 0) return out;
  // Series in u = 1/L: num_rev(u) / den_rev(u), den_rev(0) = 1.
  std::vector<Integer> s(static_cast<std::size_t>(k) + 1);
  for (std::int64_t i = 0; i <= k; ++i) {
    Integer acc = i <= n ? num_.coeff(static_cast<std::size_t>(n - i)) : Integer(0);
    for (std::int64_t t = 1; t <= std::min(i, delta); ++t) {
      acc -= den.coeff(static_cast<std::size_t>(delta - t)) * s[static_cast<std::size_t>(i - t)];
    }
    s[static_cast<std::size_t>(i)] = acc;
  }
  for (std::int64_t j = high; j >= low; --j) {
    if (j <= top) out[static_cast<std::size_t>(high - j)] = s[static_cast<std::size_t>(top - j)];
  }
  return out;
}

Rational LaurentRational::evaluate(const Rational& lefschetz) const {
  if (is_zero()) return 0;
  Rational den = rpow(lefschetz, l_power_);
  for (auto [d, e] : cyclo_) den *= rpow(cyclotomic(d).eval(lefschetz), e);
  if (den == 0) throw Error(ErrorCode::division_by_zero, "denominator vanishes at L = " + motivic::to_string(lefschetz));
  return num_.eval(lefschetz) / den;
}

LaurentRational::ProductForm LaurentRational::product_form() const {
  ProductForm pf;
  pf.numerator = num_;
  std::map<std::int64_t, std::int64_t> remaining = cyclo_;
  while (true) {
    std::int64_t top = 0;
    for (auto it = remaining.rbegin(); it != remaining.rend(); ++it) {
      if (it->second > 0) {
        top = it->first;
        break;
      }
    }
    if (top == 0) break;
    pf.cyclo.push_back(top);
    for (std::int64_t d = 1; d <= top; ++d) {
      if (top % d == 0) --remaining[d];
    }
  }
  for (auto [d, e] : remaining) {
    if (e < 0) pf.numerator = pf.numerator * power(cyclotomic(d), -e);
  }
  std::sort(pf.cyclo.begin(), pf.cyclo.end());
  if (l_power_ >= 0) {
    pf.l_power = l_power_;
  } else {
    pf.numerator = pf.numerator.shifted(static_cast<std::size_t>(-l_power_));
    pf.l_power = 0;
  }
  return pf;
}

std::string LaurentRational::to_string() const {
  if (is_zero()) return "0";
  const IntPoly shown = l_power_ < 0 ? num_.shifted(static_cast<std::size_t>(-l_power_)) : num_;
  std::vector<std::string> den;
  if (l_power_ == 1) den.emplace_back("L");
  if (l_power_ > 1) den.push_back("L^" + std::to_string(l_power_));
  for (auto [d, e] : cyclo_) {
    std::string f = "(" + cyclotomic(d).to_string("L") + ")";
    if (e > 1) f += "^" + std::to_string(e);
    den.push_back(std::move(f));
  }
  std::string num = shown.to_string("L");
  if (den.empty()) return num;
  const bool compound = std::count(shown.coeffs().begin(), shown.coeffs().end(), Integer(0)) + 1 <
                        static_cast<std::ptrdiff_t>(shown.coeffs().size());
  if (compound) num = "(" + num + ")";
  std::string d = den.front();
  for (std::size_t i = 1; i < den.size(); ++i) d += "*" + den[i];
  if (den.size() > 1) d = "(" + d + ")";
  return num + "/" + d;
}

}  // namespace motivic::kring
