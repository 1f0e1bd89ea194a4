#include "motivic/topology/sequence.hpp"

#include <map>


namespace motivic::topology {

MotivicElement MonomialSequence::term(std::int64_t n) const {
  MotivicElement v;
  for (const auto& c : components) {
    const Integer g = ipow(c.growth, static_cast<std::uint64_t>(n));
    if (g == 0) continue;
    v = v + (MotivicElement(g) * c.coeff).times_lefschetz(-(c.slope * n + c.offset));
  }
  return v;
}

MonomialSequence operator+(const MonomialSequence& a, const MonomialSequence& b) {
  MonomialSequence r = a;
  r.components.insert(r.components.end(), b.components.begin(), b.components.end());
  return r;
}

MonomialSequence operator-(const MonomialSequence& a, const MonomialSequence& b) {
  MonomialSequence r = a;
  for (auto c : b.components) {
    c.coeff = -c.coeff;
    r.components.push_back(std::move(c));
  }
  return r;
}

MonomialSequence operator*(const MonomialSequence& a, const MonomialSequence& b) {
  MonomialSequence r;
  for (const auto& x : a.components) {
    for (const auto& y : b.components) {
      r.components.push_back({x.coeff * y.coeff, x.growth * y.growth, x.slope + y.slope, x.offset + y.offset});
    }
  }
  return r;
}

NullVerdict certify_strongly_null(const MonomialSequence& seq) {
  // Fold offsets into coefficients and merge equal (growth, slope): distinct
  // bases growth * L^{-slope} are linearly independent as functions of n.
  // Growth 0 contributes at n = 0 only (0^0 = 1).
  std::map<std::pair<Integer, std::int64_t>, MotivicElement> merged;
  MotivicElement at_zero;
  for (const auto& c : seq.components) {
    if (c.coeff.is_zero()) continue;
    if (c.growth == 0) {
      at_zero = at_zero + c.coeff.times_lefschetz(-c.offset);
      continue;
    }
    auto& slot = merged[{c.growth, c.slope}];
    slot = slot + c.coeff.times_lefschetz(-c.offset);
  }
  NullVerdict v;
  WeightGrowth weight;
  bool first = true;
  for (const auto& [key, coeff] : merged) {
    if (coeff.is_zero()) continue;
    const auto& [growth, slope] = key;
    if (slope <= 0) {
      v.reason = "dimension does not tend to -inf (slope " + std::to_string(slope) + ")";
      return v;
    }
    if (boost::multiprecision::abs(growth) >= 2) {
      v.reason = "weights grow like " + growth.str() + "^n, not polynomially";
      return v;
    }
    // Shifting down only moves coefficients closer to the top of the
    // expansion, so the bound for coeff holds for every term.
    weight = weight + weight_growth_of(coeff);
    const Dimension d = coeff.dimension();
    v.dim_offset = first ? d : std::max(v.dim_offset, d);
    v.dim_slope = first ? slope : std::min(v.dim_slope, slope);
    first = false;
  }
  if (first) v.dim_slope = 1;
  if (!at_zero.is_zero()) {
    weight = weight + weight_growth_of(at_zero);
    v.dim_offset = std::max(v.dim_offset, at_zero.dimension());
  }
  v.accepted = true;
  v.reason = first ? "eventually zero" : "dimension -> -inf with bounded weights";
  v.weight = weight;
  return v;
}

}  // namespace motivic::topology
