#pragma once

#include <cstdint>
#include <vector>

#include "motivic/kring/effectivity.hpp"
#include "motivic/kring/motivic_element.hpp"

namespace motivic::topology {

using kring::Dimension;
using kring::MotivicElement;

// w_n <= C * max(1, |n|)^l + D at every weight n.
struct WeightGrowth {
  Integer C = 0;
  std::int64_t l = 0;
  Integer D = 0;

  Integer at(std::int64_t n) const;
  bool is_constant() const { return C == 0 || l == 0; }
  friend WeightGrowth operator+(const WeightGrowth& a, const WeightGrowth& b);
  friend bool operator==(const WeightGrowth&, const WeightGrowth&) = default;
};

// Bound valid at every weight for the single element x.
WeightGrowth weight_growth_of(const MotivicElement& x);

Integer binomial(std::int64_t n, std::int64_t k);

// Contributes C(i + power, power) * coeff * L^{-(start + ratio * i)} to term i.
// power = 0 is the plain geometric progression.
struct GeometricPart {
  MotivicElement coeff;
  std::int64_t start = 0;
  std::int64_t ratio = 1;
  std::int64_t power = 0;

  MotivicElement term(std::int64_t i) const;
};

// term(i) = head[i] (zero past the head) + sum of the geometric parts at i.
struct SeriesDescriptor {
  std::vector<MotivicElement> head;
  std::vector<GeometricPart> geometric;

  MotivicElement term(std::int64_t i) const;
  // sum_{i < n} term(i)
  MotivicElement partial_sum(std::int64_t n) const;
  // sum_{m <= i <= n} term(i)
  MotivicElement segment_sum(std::int64_t m, std::int64_t n) const;
  std::int64_t head_length() const { return static_cast<std::int64_t>(head.size()); }
};

// Proof object that the partial sums are Cauchy: every tail sum_{i=m}^{n}
// has dimension <= dim_bound(m) and weights bounded by `weight`.
struct SeriesCertificate {
  MotivicElement sum;
  WeightGrowth weight;
  std::vector<Dimension> head_suffix;                  // max dimension of head[i..]
  std::vector<std::pair<Dimension, std::int64_t>> slopes;  // (dim(coeff) - start, ratio)

  Dimension dim_bound(std::int64_t m) const;
};

// c * L^{-e0} / (1 - L^{-r}). c is certified on the fly when it carries no
// certificate; throws uncertified-coefficient when that fails, invalid-ratio
// for r < 1. The returned sum carries an effectivity certificate.
SeriesCertificate sum_geometric(const MotivicElement& c, std::int64_t e0, std::int64_t r);

// Requires every head entry and every geometric coefficient to be effective;
// the sum carries an effectivity certificate. Ratio < 1 -> unsupported-series.
SeriesCertificate series_sum(const SeriesDescriptor& s);

// Same limit and bounds without any effectivity requirement.
SeriesCertificate series_closed_form(const SeriesDescriptor& s);

// Termwise operations.
SeriesDescriptor operator+(const SeriesDescriptor& a, const SeriesDescriptor& b);
SeriesDescriptor operator-(const SeriesDescriptor& a, const SeriesDescriptor& b);
SeriesDescriptor termwise_product(const SeriesDescriptor& a, const SeriesDescriptor& b);

// n-th term is sum_{i+j=n} a_i b_j.
SeriesDescriptor cauchy_product(const SeriesDescriptor& a, const SeriesDescriptor& b);

// term'(i) = term(perm[i]) for i < perm.size(), term(i) beyond; perm must be a
// permutation of 0..perm.size()-1.
SeriesDescriptor rearranged(const SeriesDescriptor& s, const std::vector<std::int64_t>& perm);

// a_{ij} = coeff * L^{-(start + ratio_i * i + ratio_j * j)}, i, j >= 0.
struct DoubleGeometric {
  MotivicElement coeff;
  std::int64_t start = 0;
  std::int64_t ratio_i = 1;
  std::int64_t ratio_j = 1;

  MotivicElement term(std::int64_t i, std::int64_t j) const;
  // sum over i + j <= n
  MotivicElement diagonal_partial(std::int64_t n) const;
};

// sum_i (sum_j a_ij) through nested sum_geometric.
SeriesCertificate iterated_sum(const DoubleGeometric& a);
// n-th term is sum_{i+j=n} a_ij.
SeriesDescriptor diagonal_series(const DoubleGeometric& a);

// Caller supplies certified bounds lower_i <= middle_i <= upper_i; the termwise
// order is checked for i < depth.
struct SandwichReport {
  bool termwise_ok = false;
  SeriesCertificate lower;
  SeriesCertificate middle;
  SeriesCertificate upper;
  kring::Truth lower_leq_middle = kring::Truth::unknown;
  kring::Truth middle_leq_upper = kring::Truth::unknown;
};
SandwichReport check_sandwich(const SeriesDescriptor& lower, const SeriesDescriptor& middle,
                              const SeriesDescriptor& upper, std::int64_t depth);

}  // namespace motivic::topology
