#pragma once

#include <cstdint>
#include <vector>

#include "motivic/arcs/cylinder.hpp"
#include "motivic/kring/motivic_element.hpp"
#include "motivic/padic/fp_poly.hpp"
#include "motivic/poly.hpp"

namespace motivic::integrate {

using kring::MotivicElement;

// Branch x = center + p^depth t with f(center + p^depth t) = p^shift residual(t),
// residual primitive. digits are the residues chosen on the way down.
struct BranchNode {
  std::vector<std::uint64_t> digits;
  Integer center = 0;
  std::int64_t depth = 0;
  std::int64_t shift = 0;
  IntPoly residual;
};

struct DecompositionEntry {
  enum class Kind { unit_locus, simple_strata };

  Kind kind = Kind::unit_locus;
  BranchNode node;
  // simple_strata: the residual's simple factors of degree atom_degree, count of them.
  std::int64_t atom_degree = 1;
  std::int64_t factor_count = 0;
  // unit_locus: the single leading cell, ord f = node.shift on it.
  // simple_strata: tail cell i has ord f = node.shift + i + 1.
  arcs::MeasurableSet cells;
  MotivicElement measure;       // certified
  MotivicElement contribution;  // integral of |f|^s over the family, certified
};

struct IntegralResult {
  MotivicElement value;  // certified
  std::vector<DecompositionEntry> decomposition;
  std::int64_t max_depth = 0;
  std::int64_t depth_bound = 0;  // 1 + ord_p(disc f)
};

// Integral of L^{-s ord f(x)} over the arcs of A^1, via Hensel branches.
// Errors: zero f -> invalid-input; s < 1 -> invalid-input; f not squarefree
// over Q -> not-squarefree; repeated residue factor of degree > 1 ->
// unsupported-ramified-branch.
IntegralResult integrate_abs(const IntPoly& f, std::int64_t s, std::uint64_t p);

// Same integral restricted to the disc {x = center mod p^radius}.
IntegralResult integrate_disc(const IntPoly& f, std::int64_t s, std::uint64_t p, const Integer& center,
                              std::int64_t radius);

// Supported regions: discs (including the whole line), cells on which ord f
// is constant (decomposition cells, order strata of f), and disjoint unions
// and refinements of those. Anything else -> unsupported-region.
MotivicElement integrate_over(const IntPoly& f, std::int64_t s, std::uint64_t p, const arcs::CylinderCell& a);

// Sum of the measures of all decomposition families.
MotivicElement total_mass(const IntegralResult& r);

std::string to_string(DecompositionEntry::Kind k);

}  // namespace motivic::integrate
