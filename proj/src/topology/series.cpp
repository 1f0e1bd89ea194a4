#include "motivic/topology/series.hpp"

#include <algorithm>
#include <map>

#include "motivic/error.hpp"

namespace motivic::topology {

using kring::EffectivityCertificate;
using kring::LaurentRational;

namespace {

Integer pow_int(const Integer& base, std::int64_t e) { return ipow(base, static_cast<std::uint64_t>(e)); }

Integer max_abs(const std::vector<Integer>& v) {
  Integer m = 0;
  for (const auto& x : v) m = std::max(m, Integer(boost::multiprecision::abs(x)));
  return m;
}

// |c_j| <= scale * (top - j + 1)^degree for j <= top, and c_j = 0 above top.
// Finite coefficients additionally vanish below top - span.
struct CoefficientBound {
  bool finite = true;
  Integer scale = 0;
  std::int64_t degree = 0;
  std::int64_t top = 0;
  std::int64_t span = 0;
};

CoefficientBound coefficient_bound(const LaurentRational& c) {
  CoefficientBound b;
  if (c.is_laurent_polynomial()) {
    b.top = c.dimension().value();
    b.span = c.numerator().degree();
    b.scale = max_abs(c.numerator().coeffs());
    return b;
  }
  b.finite = false;
  if (c.has_periodic_expansion()) {
    const auto ex = c.expansion();
    b.top = std::max(ex.head_top, ex.head_low - 1);
    b.scale = std::max(max_abs(ex.head), max_abs(ex.block));
    return b;
  }
  // c = num * L^{-(l + sum k)} * prod_k 1/(1 - L^{-k}); the coefficients of the
  // product are dominated by those of 1/(1 - u)^M.
  const auto pf = c.product_form();
  std::int64_t shift = pf.l_power;
  for (std::int64_t k : pf.cyclo) shift += k;
  b.top = pf.numerator.degree() - shift;
  b.degree = static_cast<std::int64_t>(pf.cyclo.size()) - 1;
  for (const auto& x : pf.numerator.coeffs()) b.scale += boost::multiprecision::abs(x);
  return b;
}

// Reduced forms keep C = 0 whenever l = 0.
WeightGrowth make_growth(Integer C, std::int64_t l, Integer D) {
  if (l == 0) return {0, 0, C + D};
  return {std::move(C), l, std::move(D)};
}

// Weights of every segment sum_{i=m}^{n} of one geometric part.
WeightGrowth part_growth(const GeometricPart& part) {
  WeightGrowth g;
  for (const auto& [a, c] : part.coeff.terms()) {
    const CoefficientBound b = coefficient_bound(c);
    const Integer spread = boost::multiprecision::abs(Integer(b.top) - part.start) + 2;
    if (b.finite) {
      g = g + make_growth(Integer(a) * b.scale * (b.span + 1) * pow_int(spread, part.power), part.power, 0);
    } else {
      const std::int64_t e = part.power + b.degree + 1;
      g = g + make_growth(Integer(a) * b.scale * pow_int(spread, e), e, 0);
    }
  }
  return g;
}

MotivicElement geometric_factor(std::int64_t period) {
  std::map<std::int64_t, std::int64_t> cyclo;
  for (std::int64_t d = 1; d <= period; ++d) {
    if (period % d == 0) cyclo[d] = 1;
  }
  return MotivicElement(LaurentRational::make(IntPoly::constant(1).shifted(static_cast<std::size_t>(period)), 0, cyclo));
}

// sum_{i>=0} C(i+p, p) c L^{-(s + r i)} = c L^{-s} / (1 - L^{-r})^{p+1}
MotivicElement part_closed_form(const GeometricPart& part) {
  MotivicElement v = part.coeff.without_certificate().times_lefschetz(-part.start);
  const MotivicElement g = geometric_factor(part.ratio);
  for (std::int64_t k = 0; k <= part.power; ++k) v = v * g;
  return v.without_certificate();
}

MotivicElement part_closed_form_certified(const GeometricPart& part) {
  const MotivicElement c = kring::certified(part.coeff);
  EffectivityCertificate cert = c.certificate()->shifted(-part.start);
  for (std::int64_t k = 0; k <= part.power; ++k) cert = cert.with_period(part.ratio);
  return part_closed_form(part).with_certificate(std::make_shared<const EffectivityCertificate>(std::move(cert)));
}

void validate(const SeriesDescriptor& s) {
  for (const auto& part : s.geometric) {
    if (part.ratio < 1) {
      throw Error(ErrorCode::unsupported_series,
                  "ratio " + std::to_string(part.ratio) + " does not drive the dimension to -inf");
    }
    if (part.power < 0) throw Error(ErrorCode::unsupported_series, "negative power");
  }
}

SeriesCertificate bounds(const SeriesDescriptor& s) {
  validate(s);
  SeriesCertificate cert;
  const std::size_t h = s.head.size();
  cert.head_suffix.assign(h, Dimension::neg_inf());
  for (std::size_t i = h; i-- > 0;) {
    cert.head_suffix[i] = std::max(s.head[i].dimension(), i + 1 < h ? cert.head_suffix[i + 1] : Dimension::neg_inf());
    cert.weight = cert.weight + weight_growth_of(s.head[i]);
  }
  for (const auto& part : s.geometric) {
    if (part.coeff.is_zero()) continue;
    cert.slopes.emplace_back(part.coeff.dimension().value() - part.start, part.ratio);
    cert.weight = cert.weight + part_growth(part);
  }
  return cert;
}

MotivicElement sum_of_parts_at(const std::vector<GeometricPart>& parts, std::int64_t i) {
  MotivicElement v;
  for (const auto& part : parts) v = v + part.term(i);
  return v;
}

// Coefficients beta_k with C(n+p1, p1) C(n+p2, p2) = sum_k beta_k C(n+k, k).
std::vector<Integer> binomial_product_basis(std::int64_t p1, std::int64_t p2) {
  const std::int64_t d = p1 + p2;
  std::vector<Integer> values(static_cast<std::size_t>(d) + 1);
  for (std::int64_t n = 0; n <= d; ++n) values[static_cast<std::size_t>(n)] = binomial(n + p1, p1) * binomial(n + p2, p2);
  // Newton coefficients tau_j = Delta^j T(0).
  std::vector<Integer> tau;
  std::vector<Integer> diff = values;
  for (std::int64_t j = 0; j <= d; ++j) {
    tau.push_back(diff.front());
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  // C(n+k, k) = sum_j C(n, j) C(k, j).
  std::vector<Integer> beta(static_cast<std::size_t>(d) + 1);
  for (std::int64_t j = d; j >= 0; --j) {
    Integer v = tau[static_cast<std::size_t>(j)];
    for (std::int64_t k = j + 1; k <= d; ++k) v -= beta[static_cast<std::size_t>(k)] * binomial(k, j);
    beta[static_cast<std::size_t>(j)] = v;
  }
  return beta;
}

// Generating-function pole terms K / (1 - L^{-r} t)^k keyed by (r, k).
using PoleMap = std::map<std::pair<std::int64_t, std::int64_t>, MotivicElement>;

void add_pole(PoleMap& poles, std::int64_t r, std::int64_t k, const MotivicElement& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = poles.emplace(std::make_pair(r, k), coeff.without_certificate());
  if (!inserted) it->second = it->second + coeff;
}

PoleMap poles_of(const SeriesDescriptor& s) {
  PoleMap poles;
  for (const auto& part : s.geometric) add_pole(poles, part.ratio, part.power + 1, part.coeff.times_lefschetz(-part.start));
  return poles;
}

// Principal parts of 1/((1 - x t)^a (1 - y t)^b) at t = 1/x, with x = L^{-rx},
// y = L^{-ry}, rx != ry: sum_m gamma_m / (1 - x t)^{a - m}.
void add_cross_poles(PoleMap& out, std::int64_t rx, std::int64_t a, std::int64_t ry, std::int64_t b,
                     const MotivicElement& scale) {
  const LaurentRational rho = LaurentRational::lefschetz_power(rx - ry);  // y / x
  const LaurentRational inv = (LaurentRational(1) - rho).inverse();
  LaurentRational base(1);
  for (std::int64_t i = 0; i < b; ++i) base *= inv;
  const LaurentRational step = -(rho * inv);
  LaurentRational power(1);
  for (std::int64_t m = 0; m < a; ++m) {
    const LaurentRational gamma = base * power * LaurentRational(binomial(b + m - 1, m));
    add_pole(out, rx, a - m, scale * MotivicElement(gamma));
    power *= step;
  }
}

SeriesDescriptor from_poles(const PoleMap& poles) {
  SeriesDescriptor s;
  for (const auto& [key, coeff] : poles) {
    if (coeff.is_zero()) continue;
    s.geometric.push_back({coeff, 0, key.first, key.second - 1});
  }
  return s;
}

// Sets head[n] = exact(n) - parts(n) for n < length.
template <typename F>
void fix_head(SeriesDescriptor& s, std::int64_t length, F&& exact) {
  s.head.clear();
  for (std::int64_t n = 0; n < length; ++n) s.head.push_back(exact(n) - sum_of_parts_at(s.geometric, n));
  while (!s.head.empty() && s.head.back().is_zero()) s.head.pop_back();
}

}  // namespace

Integer WeightGrowth::at(std::int64_t n) const {
  const Integer base = std::max<Integer>(1, boost::multiprecision::abs(Integer(n)));
  return C * pow_int(base, l) + D;
}

WeightGrowth operator+(const WeightGrowth& a, const WeightGrowth& b) {
  if (a.C == 0) return {b.C, b.l, a.D + b.D};
  if (b.C == 0) return {a.C, a.l, a.D + b.D};
  return {a.C + b.C, std::max(a.l, b.l), a.D + b.D};
}

WeightGrowth weight_growth_of(const MotivicElement& x) {
  WeightGrowth g;
  for (const auto& [a, c] : x.terms()) {
    const CoefficientBound b = coefficient_bound(c);
    if (b.degree == 0) {
      g = g + WeightGrowth{0, 0, Integer(a) * b.scale};
    } else {
      const Integer spread = boost::multiprecision::abs(Integer(b.top)) + 2;
      g = g + make_growth(Integer(a) * b.scale * pow_int(spread, b.degree), b.degree, 0);
    }
  }
  return g;
}

Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MotivicElement GeometricPart::term(std::int64_t i) const {
  const MotivicElement c = power == 0 ? coeff : MotivicElement(binomial(i + power, power)) * coeff;
  return c.times_lefschetz(-(start + ratio * i));
}

MotivicElement SeriesDescriptor::term(std::int64_t i) const {
  MotivicElement v = i < head_length() ? head[static_cast<std::size_t>(i)] : MotivicElement();
  for (const auto& part : geometric) v = v + part.term(i);
  return v;
}

MotivicElement SeriesDescriptor::partial_sum(std::int64_t n) const { return segment_sum(0, n - 1); }

MotivicElement SeriesDescriptor::segment_sum(std::int64_t m, std::int64_t n) const {
  MotivicElement v;
  for (std::int64_t i = m; i <= n; ++i) v = v + term(i);
  return v;
}

Dimension SeriesCertificate::dim_bound(std::int64_t m) const {
  Dimension d = m < static_cast<std::int64_t>(head_suffix.size()) ? head_suffix[static_cast<std::size_t>(m)]
                                                                   : Dimension::neg_inf();
  for (const auto& [offset, ratio] : slopes) d = std::max(d, Dimension(offset.value() - ratio * m));
  return d;
}

SeriesCertificate sum_geometric(const MotivicElement& c, std::int64_t e0, std::int64_t r) {
  if (r < 1) throw Error(ErrorCode::invalid_ratio, "ratio must be >= 1, got " + std::to_string(r));
  SeriesDescriptor s;
  s.geometric.push_back({kring::certified(c), e0, r, 0});
  return series_sum(s);
}

SeriesCertificate series_sum(const SeriesDescriptor& s) {
  SeriesCertificate cert = bounds(s);
  MotivicElement total;
  for (const auto& h : s.head) total = total + kring::certified(h);
  for (const auto& part : s.geometric) total = total + part_closed_form_certified(part);
  cert.sum = total;
  return cert;
}

SeriesCertificate series_closed_form(const SeriesDescriptor& s) {
  SeriesCertificate cert = bounds(s);
  MotivicElement total = MotivicElement().without_certificate();
  for (const auto& h : s.head) total = total + h;
  for (const auto& part : s.geometric) total = total + part_closed_form(part);
  cert.sum = total.without_certificate();
  return cert;
}

SeriesDescriptor operator+(const SeriesDescriptor& a, const SeriesDescriptor& b) {
  SeriesDescriptor r;
  const std::size_t h = std::max(a.head.size(), b.head.size());
  for (std::size_t i = 0; i < h; ++i) {
    r.head.push_back((i < a.head.size() ? a.head[i] : MotivicElement()) +
                     (i < b.head.size() ? b.head[i] : MotivicElement()));
  }
  r.geometric = a.geometric;
  r.geometric.insert(r.geometric.end(), b.geometric.begin(), b.geometric.end());
  return r;
}

SeriesDescriptor operator-(const SeriesDescriptor& a, const SeriesDescriptor& b) {
  SeriesDescriptor neg;
  for (const auto& h : b.head) neg.head.push_back(-h);
  for (auto part : b.geometric) {
    part.coeff = -part.coeff;
    neg.geometric.push_back(std::move(part));
  }
  return a + neg;
}

SeriesDescriptor termwise_product(const SeriesDescriptor& a, const SeriesDescriptor& b) {
  validate(a);
  validate(b);
  SeriesDescriptor r;
  for (const auto& pa : a.geometric) {
    for (const auto& pb : b.geometric) {
      const MotivicElement c = pa.coeff * pb.coeff;
      const auto beta = binomial_product_basis(pa.power, pb.power);
      for (std::size_t k = 0; k < beta.size(); ++k) {
        if (beta[k] == 0) continue;
        r.geometric.push_back({MotivicElement(beta[k]) * c, pa.start + pb.start, pa.ratio + pb.ratio,
                               static_cast<std::int64_t>(k)});
      }
    }
  }
  // head_a b + G_a head_b keeps certificates of effective inputs.
  const std::size_t h = std::max(a.head.size(), b.head.size());
  for (std::size_t i = 0; i < h; ++i) {
    const auto n = static_cast<std::int64_t>(i);
    MotivicElement v;
    if (i < a.head.size()) v = v + a.head[i] * b.term(n);
    if (i < b.head.size()) v = v + sum_of_parts_at(a.geometric, n) * b.head[i];
    r.head.push_back(v);
  }
  return r;
}

SeriesDescriptor cauchy_product(const SeriesDescriptor& a, const SeriesDescriptor& b) {
  validate(a);
  validate(b);
  const PoleMap pa = poles_of(a);
  const PoleMap pb = poles_of(b);
  PoleMap out;
  for (const auto& [ka, ca] : pa) {
    for (const auto& [kb, cb] : pb) {
      const MotivicElement scale = ca * cb;
      if (ka.first == kb.first) {
        add_pole(out, ka.first, ka.second + kb.second, scale);
      } else {
        add_cross_poles(out, ka.first, ka.second, kb.first, kb.second, scale);
        add_cross_poles(out, kb.first, kb.second, ka.first, ka.second, scale);
      }
    }
  }
  // t^i / (1 - x t)^k = x^{-i} (1 - u)^i / u^k with u = 1 - x t.
  auto head_times_poles = [&out](const std::vector<MotivicElement>& head, const PoleMap& poles) {
    for (std::size_t i = 0; i < head.size(); ++i) {
      const auto ii = static_cast<std::int64_t>(i);
      for (const auto& [key, c] : poles) {
        const auto [r, k] = key;
        for (std::int64_t j = 0; j <= std::min(ii, k - 1); ++j) {
          const Integer sign = j % 2 == 0 ? 1 : -1;
          add_pole(out, r, k - j, MotivicElement(sign * binomial(ii, j)) * head[i] * c.times_lefschetz(r * ii));
        }
      }
    }
  };
  head_times_poles(a.head, pb);
  head_times_poles(b.head, pa);
  SeriesDescriptor r = from_poles(out);
  fix_head(r, a.head_length() + b.head_length(), [&](std::int64_t n) {
    MotivicElement v;
    for (std::int64_t i = 0; i <= n; ++i) v = v + a.term(i) * b.term(n - i);
    return v;
  });
  return r;
}

SeriesDescriptor rearranged(const SeriesDescriptor& s, const std::vector<std::int64_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::int64_t i : perm) {
    if (i < 0 || i >= static_cast<std::int64_t>(perm.size()) || seen[static_cast<std::size_t>(i)]) {
      throw Error(ErrorCode::invalid_input, "not a permutation of the leading indices");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
  SeriesDescriptor r;
  r.geometric = s.geometric;
  const auto k = static_cast<std::int64_t>(perm.size());
  fix_head(r, std::max(k, s.head_length()),
           [&](std::int64_t n) { return n < k ? s.term(perm[static_cast<std::size_t>(n)]) : s.term(n); });
  return r;
}

MotivicElement DoubleGeometric::term(std::int64_t i, std::int64_t j) const {
  return coeff.times_lefschetz(-(start + ratio_i * i + ratio_j * j));
}

MotivicElement DoubleGeometric::diagonal_partial(std::int64_t n) const {
  MotivicElement v;
  for (std::int64_t i = 0; i <= n; ++i) {
    for (std::int64_t j = 0; i + j <= n; ++j) v = v + term(i, j);
  }
  return v;
}

SeriesCertificate iterated_sum(const DoubleGeometric& a) {
  const SeriesCertificate inner = sum_geometric(a.coeff, a.start, a.ratio_j);
  return sum_geometric(inner.sum, 0, a.ratio_i);
}

SeriesDescriptor diagonal_series(const DoubleGeometric& a) {
  if (a.ratio_i < 1 || a.ratio_j < 1) throw Error(ErrorCode::invalid_ratio, "ratios must be >= 1");
  SeriesDescriptor x;
  x.geometric.push_back({a.coeff, a.start, a.ratio_i, 0});
  SeriesDescriptor y;
  y.geometric.push_back({MotivicElement(1), 0, a.ratio_j, 0});
  return cauchy_product(x, y);
}

SandwichReport check_sandwich(const SeriesDescriptor& lower, const SeriesDescriptor& middle,
                              const SeriesDescriptor& upper, std::int64_t depth) {
  SandwichReport report;
  report.lower = series_sum(lower);
  report.upper = series_sum(upper);
  for (std::int64_t i = 0; i < depth; ++i) {
    const MotivicElement y = middle.term(i);
    if (kring::leq(lower.term(i), y) != kring::Truth::yes || kring::leq(y, upper.term(i)) != kring::Truth::yes) {
      return report;
    }
  }
  report.termwise_ok = true;
  report.middle = series_sum(middle);
  report.lower_leq_middle = kring::leq(report.lower.sum, report.middle.sum);
  report.middle_leq_upper = kring::leq(report.middle.sum, report.upper.sum);
  return report;
}

}  // namespace motivic::topology
