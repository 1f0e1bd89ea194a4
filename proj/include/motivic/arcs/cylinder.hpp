#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motivic/kring/effectivity.hpp"
#include "motivic/kring/motivic_element.hpp"
#include "motivic/padic/oracle.hpp"
#include "motivic/padic/truncated_ring.hpp"
#include "motivic/poly.hpp"
#include "motivic/topology/series.hpp"

namespace motivic::arcs {

using kring::MotivicElement;
using padic::TruncatedRing;

enum class Provenance { whole, disc, orbit, order_stratum, complement, product, refinement, disjoint_union };
std::string to_string(Provenance p);

// {x : x = center mod p^radius}, d = 1.
struct Disc {
  Integer center;
  std::int64_t radius = 0;
};

// ord f(x) equals `order` at every point of the cell.
struct ConstantOrder {
  IntPoly f;
  std::int64_t order = 0;
};

// A = pi_level^{-1}(pi_level(A)) inside the arcs of A^d over W(F_q), with the
// class of pi_level(A) carried symbolically. Cells whose class depends on the
// residue characteristic record it in `prime` (0: any prime).
struct CylinderCell {
  using Membership = std::function<bool(const TruncatedRing&, std::span<const TruncatedRing::Element>)>;

  std::int64_t d = 1;
  std::int64_t level = 0;
  MotivicElement image_class;  // effective, certificate attached
  Membership membership;       // valid on rings of level >= `level`
  Provenance provenance = Provenance::whole;
  std::uint64_t prime = 0;
  std::optional<Disc> disc;
  std::optional<ConstantOrder> constant_order;
  std::vector<CylinderCell> components;  // disjoint_union only

  bool contains(const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) const;
};

CylinderCell whole_space(std::int64_t d);
// Residue disc {x = center mod p^radius}; class 1 at level radius.
CylinderCell disc(const Integer& center, std::int64_t radius, std::uint64_t p);
// {x : ord m(x) >= n} for monic m with squarefree reduction mod p, n >= 1.
// One disc of radius p^{-n} per residue root, so mu = class_of_zero_dim(m mod p) L^{-n}.
CylinderCell orbit_cell(const IntPoly& m, std::int64_t n, std::uint64_t p);
// {x : ord m(x) = e}, same hypotheses; level e + 1.
CylinderCell poly_order_stratum(const IntPoly& m, std::int64_t e, std::uint64_t p);

// Level-wise complement inside A^d: class L^{level d} - image_class.
CylinderCell complement(const CylinderCell& a);
CylinderCell product(const CylinderCell& a, const CylinderCell& b);
CylinderCell refine_level(const CylinderCell& a, std::int64_t k);

struct DisjointnessCheck {
  // Oracle sweep is skipped above this many points (construction is trusted).
  std::uint64_t max_points = 1'000'000;
  std::vector<std::int64_t> extension_degrees = {1, 2};
};

// Cells are lifted to the largest level; pairwise overlap found by oracle
// enumeration -> not-disjoint.
CylinderCell disjoint_union(const std::vector<CylinderCell>& cells, const DisjointnessCheck& check = {});

// image_class * L^{-level d}
MotivicElement measure_stable(const CylinderCell& a);

// mu(a) <= 1, witnessed by the complement's certificate.
kring::Truth measure_at_most_one(const CylinderCell& a);

// Pairwise disjoint family: finitely many leading cells followed by the
// generated tail tail(0), tail(1), ... whose measures are given in closed form.
struct MeasurableSet {
  std::vector<CylinderCell> leading;
  std::function<CylinderCell(std::int64_t)> tail;
  topology::SeriesDescriptor tail_measures;
  std::optional<topology::SeriesCertificate> certificate;

  // The i-th cell of the whole family.
  CylinderCell cell(std::int64_t i) const;
};

// Checks tail_measures against measure_stable on the first `probe` tail cells
// (invalid-input on mismatch) and disjointness of the first leading.size() +
// `probe` cells, then certifies the tail sum when its terms are effective.
MeasurableSet make_measurable_set(std::vector<CylinderCell> leading, std::function<CylinderCell(std::int64_t)> tail,
                                  topology::SeriesDescriptor tail_measures, std::int64_t probe = 4,
                                  const DisjointnessCheck& check = {});

// Strata {ord m(x) = e}, e >= 0, hypotheses as for orbit_cell.
MeasurableSet order_strata(const IntPoly& m, std::uint64_t p);

// Sum of the family's measures; missing tail certificate -> uncertified-union.
MotivicElement measure_countable_union(const MeasurableSet& set);

// Membership of a finite union of cells of the family.
bool in_family_prefix(const MeasurableSet& set, std::int64_t count, const TruncatedRing& ring,
                      std::span<const TruncatedRing::Element> x);

}  // namespace motivic::arcs
