#include "motivic/padic/oracle.hpp"

#include <algorithm>
#include <thread>

#include "motivic/error.hpp"

namespace motivic::padic {

namespace {

unsigned resolve_threads(unsigned requested, std::uint64_t total) {
  unsigned t = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  if (total < 4096) t = 1;
  return t;
}

std::uint64_t checked_point_count(const TruncatedRing& ring, std::int64_t d, const EnumerationOptions& options) {
  const Integer total = ipow(ring.size(), static_cast<std::uint64_t>(d));
  if (total > options.budget) {
    throw Error(ErrorCode::budget_exceeded, "enumeration of " + total.str() + " points exceeds budget " +
                                                std::to_string(options.budget));
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace

void parallel_ranges(std::uint64_t total, unsigned threads,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
  if (threads <= 1) {
    body(0, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(total, chunk * w);
    const std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

TruncatedOrder ord_trunc(const MultiPoly& poly, const TruncatedRing& ring,
                         std::span<const TruncatedRing::Element> point) {
  const std::int64_t v = ring.ord(poly.eval(ring, point));
  return v >= ring.n() ? TruncatedOrder{ring.n(), true} : TruncatedOrder{v, false};
}

TruncatedOrder ord_trunc(const IntPoly& poly, const TruncatedRing& ring, const TruncatedRing::Element& x) {
  const std::int64_t v = ring.ord(ring.eval(poly, x));
  return v >= ring.n() ? TruncatedOrder{ring.n(), true} : TruncatedOrder{v, false};
}

Rational haar_measure(const PointPredicate& pred, const TruncatedRing& ring, std::int64_t d,
                      const EnumerationOptions& options) {
  if (d < 1) throw Error(ErrorCode::invalid_input, "ambient dimension must be >= 1");
  const std::uint64_t total = checked_point_count(ring, d, options);
  const auto per_coord = static_cast<std::uint64_t>(ring.size());
  const unsigned threads = resolve_threads(options.threads, total);
  std::vector<std::uint64_t> hits(threads, 0);
  parallel_ranges(total, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
    std::vector<TruncatedRing::Element> point(static_cast<std::size_t>(d));
    std::uint64_t local = 0;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      std::uint64_t rest = idx;
      for (auto& coord : point) {
        coord = ring.from_index(rest % per_coord);
        rest /= per_coord;
      }
      if (pred(ring, point)) ++local;
    }
    hits[worker] = local;
  });
  Integer count = 0;
  for (auto h : hits) count += h;
  return Rational(count, Integer(total));
}

OrderHistogram order_histogram(const IntPoly& poly, const TruncatedRing& ring, const EnumerationOptions& options) {
  if (poly.is_zero()) throw Error(ErrorCode::invalid_input, "zero integrand");
  const std::uint64_t total = checked_point_count(ring, 1, options);
  const unsigned threads = resolve_threads(options.threads, total);
  const auto levels = static_cast<std::size_t>(ring.n());
  std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(levels + 1, 0));

  std::vector<TruncatedRing::Element> lifted;
  lifted.reserve(poly.coeffs().size());
  for (const auto& c : poly.coeffs()) lifted.push_back(ring.from_integer(c));

  parallel_ranges(total, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
    auto& local = counts[worker];
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const TruncatedRing::Element x = ring.from_index(idx);
      TruncatedRing::Element acc = ring.zero();
      for (std::size_t i = lifted.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), lifted[i]);
      ++local[static_cast<std::size_t>(ring.ord(acc))];
    }
  });

  OrderHistogram hist;
  hist.by_order.assign(levels, 0);
  for (const auto& local : counts) {
    for (std::size_t e = 0; e < levels; ++e) hist.by_order[e] += local[e];
    hist.saturated += local[levels];
  }
  hist.total = total;
  return hist;
}

IntegralInterval interval_from_histogram(const OrderHistogram& hist, std::int64_t s, const TruncatedRing& ring) {
  if (s < 1) throw Error(ErrorCode::invalid_input, "exponent s must be >= 1");
  const Rational q(ring.q());
  IntegralInterval out;
  out.level = ring.n();
  for (std::size_t e = 0; e < hist.by_order.size(); ++e) {
    out.lo += Rational(hist.by_order[e], hist.total) * rpow(q, -static_cast<std::int64_t>(e) * s);
  }
  out.hi = out.lo + Rational(hist.saturated, hist.total) * rpow(q, -ring.n() * s);
  return out;
}

IntegralInterval integral_interval(const IntPoly& poly, std::int64_t s, const TruncatedRing& ring,
                                   const EnumerationOptions& options) {
  return interval_from_histogram(order_histogram(poly, ring, options), s, ring);
}

IntegralInterval integral_interval(const MultiPoly& poly, std::int64_t s, const TruncatedRing& ring,
                                   const EnumerationOptions& options) {
  if (poly.vars != 1) throw Error(ErrorCode::unsupported_arity, "integral oracle is univariate");
  std::vector<Integer> coeffs;
  for (const auto& [exps, c] : poly.terms) {
    const std::size_t e = exps.at(0);
    if (coeffs.size() <= e) coeffs.resize(e + 1);
    coeffs[e] += c;
  }
  return integral_interval(IntPoly(std::move(coeffs)), s, ring, options);
}

}  // namespace motivic::padic
