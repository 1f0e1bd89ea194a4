#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "motivic/numeric.hpp"
#include "motivic/padic/truncated_ring.hpp"
#include "motivic/poly.hpp"

// Brute-force p-adic side: everything here is computed by enumerating points
// of W_n(F_q)^d and never consults the motivic engine.
namespace motivic::padic {

struct EnumerationOptions {
  std::uint64_t budget = 10'000'000;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

// Valuation of F(x) truncated at the ring level.
struct TruncatedOrder {
  std::int64_t order = 0;
  bool at_least = false;  // true: the value is >= order == n

  friend bool operator==(const TruncatedOrder&, const TruncatedOrder&) = default;
};

TruncatedOrder ord_trunc(const MultiPoly& poly, const TruncatedRing& ring,
                         std::span<const TruncatedRing::Element> point);
TruncatedOrder ord_trunc(const IntPoly& poly, const TruncatedRing& ring, const TruncatedRing::Element& x);

using PointPredicate =
    std::function<bool(const TruncatedRing&, std::span<const TruncatedRing::Element>)>;

// Exact |{x in R^d : pred(x)}| / q^{nd}.
Rational haar_measure(const PointPredicate& pred, const TruncatedRing& ring, std::int64_t d,
                      const EnumerationOptions& options = {});

// Counts of points by ord F(x) = 0, ..., n-1, plus the unresolved >= n stratum.
struct OrderHistogram {
  std::vector<Integer> by_order;
  Integer saturated = 0;
  Integer total = 0;
};

OrderHistogram order_histogram(const IntPoly& poly, const TruncatedRing& ring,
                               const EnumerationOptions& options = {});

struct IntegralInterval {
  Rational lo;
  Rational hi;
  std::int64_t level = 0;

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational width() const { return hi - lo; }
};

IntegralInterval interval_from_histogram(const OrderHistogram& hist, std::int64_t s,
                                         const TruncatedRing& ring);

// Brackets the integral of |F|^s over W(F_q), where |y| = q^{-ord y}.
IntegralInterval integral_interval(const IntPoly& poly, std::int64_t s, const TruncatedRing& ring,
                                   const EnumerationOptions& options = {});
IntegralInterval integral_interval(const MultiPoly& poly, std::int64_t s, const TruncatedRing& ring,
                                   const EnumerationOptions& options = {});

// Runs body(begin, end, worker) over [0, total) split into contiguous ranges.
void parallel_ranges(std::uint64_t total, unsigned threads,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body);

}  // namespace motivic::padic
