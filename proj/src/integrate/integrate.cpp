#include "motivic/integrate/integrate.hpp"

#include <algorithm>
#include <map>

#include "motivic/error.hpp"
#include "motivic/kring/effectivity.hpp"
#include "motivic/padic/oracle.hpp"
#include "motivic/topology/series.hpp"

namespace motivic::integrate {

namespace {

using arcs::CylinderCell;
using padic::FpPoly;
using padic::TruncatedRing;

// Irreducible factors of a squarefree g grouped by degree: degree -> (product, count).
std::map<std::int64_t, std::pair<FpPoly, std::int64_t>> split_by_degree(const FpPoly& g) {
  std::map<std::int64_t, std::pair<FpPoly, std::int64_t>> out;
  const std::uint64_t p = g.p();
  FpPoly rest = g.monic();
  for (std::int64_t a = 1; rest.degree() > 0; ++a) {
    if (2 * a > rest.degree()) {
      out[rest.degree()] = {rest, 1};
      break;
    }
    const FpPoly h = padic::gcd(rest, padic::frobenius_power(rest, a) - FpPoly::x(p));
    if (h.degree() > 0) {
      out[a] = {h, h.degree() / a};
      rest = rest / h;
    }
  }
  return out;
}

const MotivicElement& lefschetz_minus_one() {
  static const MotivicElement v = kring::certified(MotivicElement::lefschetz(1) - MotivicElement(1));
  return v;
}

// x = center mod p^depth, and the residue digit of (x - center) at depth satisfies `digit_ok`.
bool in_branch(const TruncatedRing& ring, const TruncatedRing::Element& x, const Integer& center, std::int64_t depth,
               const FpPoly& roots, bool want_root) {
  const TruncatedRing::Element y = ring.sub(x, ring.from_integer(center));
  if (ring.ord(y) < depth) return false;
  const TruncatedRing field = ring.residue_field();
  const bool is_root = field.is_zero(field.eval(roots, ring.residue_digit(y, depth)));
  return is_root == want_root;
}

CylinderCell branch_cell(const BranchNode& node, const IntPoly& f, std::uint64_t p, std::int64_t natural_level,
                         std::int64_t order, MotivicElement natural_class, FpPoly roots, bool want_root) {
  CylinderCell c;
  c.d = 1;
  // Membership reads ord f, which needs level order + 1.
  c.level = std::max(natural_level, order + 1);
  c.image_class = natural_class.times_lefschetz(c.level - natural_level);
  c.membership = [f, center = node.center, depth = node.depth, order, roots = std::move(roots), want_root](
                     const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) {
    if (!in_branch(ring, x[0], center, depth, roots, want_root)) return false;
    const auto o = padic::ord_trunc(f, ring, x[0]);
    return !o.at_least && o.order == order;
  };
  c.provenance = arcs::Provenance::order_stratum;
  c.prime = p;
  c.constant_order = arcs::ConstantOrder{f, order};
  return c;
}

struct Context {
  IntPoly f;
  std::int64_t s;
  std::uint64_t p;
  std::int64_t start_depth;
  std::int64_t depth_bound;
  IntegralResult* out;
};

// f(center + p^depth t) = p^shift g(t), g primitive.
BranchNode make_node(const IntPoly& f, std::uint64_t p, const Integer& center, std::int64_t depth,
                     std::vector<std::uint64_t> digits) {
  IntPoly g = f.compose_affine(center, ipow(Integer(p), static_cast<std::uint64_t>(depth)));
  const std::int64_t v = valuation(g.content(), p);
  const Integer scale = ipow(Integer(p), static_cast<std::uint64_t>(v));
  std::vector<Integer> c = g.coeffs();
  for (auto& x : c) x /= scale;
  return BranchNode{std::move(digits), center, depth, v, IntPoly(std::move(c))};
}

void visit(const Context& ctx, const BranchNode& node) {
  const std::int64_t steps = node.depth - ctx.start_depth;
  if (steps > ctx.depth_bound) throw Error(ErrorCode::internal, "branch recursion exceeded 1 + ord_p(disc f)");
  ctx.out->max_depth = std::max(ctx.out->max_depth, steps);
  const std::uint64_t p = ctx.p;
  const std::int64_t s = ctx.s;
  const FpPoly reduced = FpPoly::from_int(node.residual, p);

  FpPoly radical = FpPoly::constant(p, 1);
  FpPoly simple = FpPoly::constant(p, 1);
  std::vector<std::uint64_t> multiple_roots;
  for (const auto& [factor, mult] : padic::squarefree_decomposition(reduced)) {
    radical = radical * factor;
    if (mult == 1) {
      simple = factor;
      continue;
    }
    for (const auto& [deg, piece] : split_by_degree(factor)) {
      if (deg != 1) {
        throw Error(ErrorCode::unsupported_ramified_branch,
                    "repeated residue factor of degree " + std::to_string(deg) + " of " + node.residual.to_string() +
                        " mod " + std::to_string(p));
      }
      for (std::uint64_t r : padic::prime_field_roots(piece.first)) multiple_roots.push_back(r);
    }
  }
  std::sort(multiple_roots.begin(), multiple_roots.end());

  // Unit locus: residue digit off every root, ord f = shift.
  {
    const MotivicElement roots = kring::certified(kring::class_of_zero_dim(radical));
    const MotivicElement natural = kring::complement_class(1, roots);
    DecompositionEntry e;
    e.kind = DecompositionEntry::Kind::unit_locus;
    e.node = node;
    CylinderCell cell = branch_cell(node, ctx.f, p, node.depth + 1, node.shift, natural, radical, false);
    e.measure = arcs::measure_stable(cell);
    e.contribution = e.measure.times_lefschetz(-node.shift * s);
    e.cells = arcs::make_measurable_set({std::move(cell)}, nullptr, {});
    ctx.out->value = ctx.out->value + e.contribution;
    ctx.out->decomposition.push_back(std::move(e));
  }

  // Simple roots: ord g(t) = k on (roots of degree a) x (L - 1) at level depth + 1 + k.
  for (const auto& [deg, piece] : split_by_degree(simple)) {
    const auto& [product, count] = piece;
    const MotivicElement cls = MotivicElement::atom(deg) * MotivicElement(Integer(count));
    const MotivicElement stratum_class = cls * lefschetz_minus_one();
    DecompositionEntry e;
    e.kind = DecompositionEntry::Kind::simple_strata;
    e.node = node;
    e.atom_degree = deg;
    e.factor_count = count;
    topology::SeriesDescriptor measures;
    // Tail cell i is ord g = i + 1: mu = [cls] (L - 1) L^{-(depth + 2 + i)}.
    measures.geometric.push_back({stratum_class, node.depth + 2, 1, 0});
    const IntPoly f = ctx.f;
    const std::function<CylinderCell(std::int64_t)> tail = [node, f, p, stratum_class, product](std::int64_t i) {
      return branch_cell(node, f, p, node.depth + 2 + i, node.shift + i + 1, stratum_class, product, true);
    };
    // Disjoint by construction; the oracle sweep is left to the tests.
    e.cells = arcs::make_measurable_set({}, tail, measures, 3, {.max_points = 0});
    e.measure = arcs::measure_countable_union(e.cells);
    // sum_{k>=1} [cls](L - 1) L^{-(depth + 1 + k)} L^{-(shift + k) s}
    e.contribution = topology::sum_geometric(stratum_class, node.depth + 2 + (node.shift + 1) * s, s + 1).sum;
    ctx.out->value = ctx.out->value + e.contribution;
    ctx.out->decomposition.push_back(std::move(e));
  }

  for (std::uint64_t r : multiple_roots) {
    std::vector<std::uint64_t> digits = node.digits;
    digits.push_back(r);
    const Integer center = node.center + Integer(r) * ipow(Integer(p), static_cast<std::uint64_t>(node.depth));
    visit(ctx, make_node(ctx.f, p, center, node.depth + 1, std::move(digits)));
  }
}

void check_inputs(const IntPoly& f, std::int64_t s, std::uint64_t p) {
  if (f.is_zero()) throw Error(ErrorCode::invalid_input, "zero integrand");
  if (s < 1) throw Error(ErrorCode::invalid_input, "exponent s must be >= 1");
  if (!is_prime(p)) throw Error(ErrorCode::invalid_input, std::to_string(p) + " is not prime");
  if (f.degree() >= 1 && discriminant(f) == 0) {
    throw Error(ErrorCode::not_squarefree, f.to_string() + " has a repeated factor over Q");
  }
}

std::int64_t depth_bound_of(const IntPoly& f, std::uint64_t p) {
  if (f.degree() < 1) return 1;
  return 1 + valuation(discriminant(f), p);
}

}  // namespace

std::string to_string(DecompositionEntry::Kind k) {
  return k == DecompositionEntry::Kind::unit_locus ? "unit-locus" : "simple-strata";
}

IntegralResult integrate_disc(const IntPoly& f, std::int64_t s, std::uint64_t p, const Integer& center,
                              std::int64_t radius) {
  check_inputs(f, s, p);
  if (radius < 0) throw Error(ErrorCode::invalid_input, "disc radius must be >= 0");
  const Integer modulus = ipow(Integer(p), static_cast<std::uint64_t>(radius));
  Integer c = center % modulus;
  if (c < 0) c += modulus;
  IntegralResult out;
  out.depth_bound = depth_bound_of(f, p);
  const Context ctx{f, s, p, radius, out.depth_bound, &out};
  std::vector<std::uint64_t> digits;
  Integer rest = c;
  for (std::int64_t i = 0; i < radius; ++i) {
    digits.push_back(static_cast<std::uint64_t>(rest % p));
    rest /= p;
  }
  visit(ctx, make_node(f, p, c, radius, std::move(digits)));
  return out;
}

IntegralResult integrate_abs(const IntPoly& f, std::int64_t s, std::uint64_t p) {
  return integrate_disc(f, s, p, 0, 0);
}

MotivicElement integrate_over(const IntPoly& f, std::int64_t s, std::uint64_t p, const arcs::CylinderCell& a) {
  if (a.d != 1) throw Error(ErrorCode::unsupported_region, "integrands live on the line");
  if (a.prime != 0 && a.prime != p) throw Error(ErrorCode::unsupported_region, "cell built for another prime");
  if (a.constant_order && a.constant_order->f == f) {
    check_inputs(f, s, p);
    return arcs::measure_stable(a).times_lefschetz(-a.constant_order->order * s);
  }
  if (a.disc) return integrate_disc(f, s, p, a.disc->center, a.disc->radius).value;
  if (a.provenance == arcs::Provenance::disjoint_union ||
      (a.provenance == arcs::Provenance::refinement && !a.components.empty())) {
    MotivicElement total;
    for (const auto& part : a.components) total = total + integrate_over(f, s, p, part);
    return total;
  }
  throw Error(ErrorCode::unsupported_region, "region " + arcs::to_string(a.provenance) + " is not compatible with the branch tree");
}

MotivicElement total_mass(const IntegralResult& r) {
  MotivicElement total;
  for (const auto& e : r.decomposition) total = total + e.measure;
  return total;
}

}  // namespace motivic::integrate
