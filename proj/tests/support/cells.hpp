#pragma once

// Random cylinder cells and the brute-force Haar measure of a cell.

#include <algorithm>
#include <random>
#include <vector>

#include "motivic/arcs/cylinder.hpp"
#include "motivic/padic/fp_poly.hpp"
#include "motivic/padic/oracle.hpp"

namespace testing_support {

using motivic::Integer;
using motivic::IntPoly;
using motivic::Rational;
using motivic::arcs::CylinderCell;
using motivic::padic::TruncatedRing;

inline Rational oracle(const CylinderCell& c, std::uint64_t p, std::int64_t f, std::int64_t extra_levels = 0) {
  const TruncatedRing ring(p, f, std::max<std::int64_t>(c.level, 1) + extra_levels);
  return motivic::padic::haar_measure(
      [&c](const TruncatedRing& r, std::span<const TruncatedRing::Element> x) { return c.contains(r, x); }, ring, c.d);
}

struct CellGenerator {
  std::mt19937_64& rng;
  std::uint64_t p;

  IntPoly monic_squarefree_mod_p() {
    std::uniform_int_distribution<int> deg(1, 3), coef(-4, 4);
    for (;;) {
      const int n = deg(rng);
      std::vector<Integer> c;
      for (int i = 0; i < n; ++i) c.emplace_back(coef(rng));
      c.emplace_back(1);
      IntPoly m(c);
      if (motivic::padic::is_squarefree(motivic::padic::FpPoly::from_int(m, p))) return m;
    }
  }

  CylinderCell basic(std::int64_t max_level) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<std::int64_t> lvl(1, std::max<std::int64_t>(max_level, 1));
    switch (kind(rng)) {
      case 0: {
        std::uniform_int_distribution<std::int64_t> center(-20, 20), radius(0, max_level);
        return motivic::arcs::disc(center(rng), radius(rng), p);
      }
      case 1: return motivic::arcs::orbit_cell(monic_squarefree_mod_p(), lvl(rng), p);
      case 2: {
        std::uniform_int_distribution<std::int64_t> e(0, max_level - 1);
        return motivic::arcs::poly_order_stratum(monic_squarefree_mod_p(), e(rng), p);
      }
      default: return motivic::arcs::whole_space(1);
    }
  }

  CylinderCell operator()() {
    std::uniform_int_distribution<int> op(0, 4);
    switch (op(rng)) {
      case 0: return motivic::arcs::complement(basic(3));
      case 1: {
        const CylinderCell c = basic(2);
        std::uniform_int_distribution<std::int64_t> k(0, 3 - c.level);
        return motivic::arcs::refine_level(c, k(rng));
      }
      case 2: {
        // Two distinct residue classes mod p^2.
        std::uniform_int_distribution<std::int64_t> center(0, static_cast<std::int64_t>(p * p) - 1);
        const std::int64_t a = center(rng);
        std::int64_t b = center(rng);
        if (b == a) b = (a + 1) % static_cast<std::int64_t>(p * p);
        return motivic::arcs::disjoint_union({motivic::arcs::disc(a, 2, p), motivic::arcs::disc(b, 2, p)});
      }
      default: return basic(3);
    }
  }
};

}  // namespace testing_support
