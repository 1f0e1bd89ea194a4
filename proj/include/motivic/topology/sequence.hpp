#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "motivic/topology/series.hpp"

namespace motivic::topology {

// growth^n * coeff * L^{-(slope * n + offset)}
struct MonomialComponent {
  MotivicElement coeff;
  Integer growth = 1;
  std::int64_t slope = 1;
  std::int64_t offset = 0;
};

struct MonomialSequence {
  std::vector<MonomialComponent> components;

  MotivicElement term(std::int64_t n) const;

  friend MonomialSequence operator+(const MonomialSequence& a, const MonomialSequence& b);
  friend MonomialSequence operator-(const MonomialSequence& a, const MonomialSequence& b);
  friend MonomialSequence operator*(const MonomialSequence& a, const MonomialSequence& b);
};

struct NullVerdict {
  bool accepted = false;
  std::string reason;
  // On acceptance: w_k(term(n)) <= weight.at(k) for all n and weights k, and
  // dimension(term(n)) <= dim_offset - dim_slope * n.
  std::optional<WeightGrowth> weight;
  Dimension dim_offset = Dimension::neg_inf();
  std::int64_t dim_slope = 0;
};

// Strong convergence to zero: dimension -> -inf and uniform polynomial weight
// growth. Every monomial-type sequence is decidable.
NullVerdict certify_strongly_null(const MonomialSequence& seq);

}  // namespace motivic::topology
