#include "motivic/arcs/cylinder.hpp"

#include <algorithm>

#include "motivic/error.hpp"
#include "motivic/padic/fp_poly.hpp"

namespace motivic::arcs {

namespace {

void check_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_input, std::to_string(p) + " is not prime");
}

// Class of the roots of m mod p; m monic with squarefree reduction.
MotivicElement residue_root_class(const IntPoly& m, std::uint64_t p) {
  check_prime(p);
  if (m.degree() < 1 || m.leading() != 1) throw Error(ErrorCode::invalid_input, "cell polynomial must be monic of degree >= 1");
  const padic::FpPoly reduced = padic::FpPoly::from_int(m, p);
  if (!padic::is_squarefree(reduced)) {
    throw Error(ErrorCode::unsupported_cell, m.to_string() + " has a repeated factor mod " + std::to_string(p));
  }
  return kring::certified(kring::class_of_zero_dim(reduced));
}

const MotivicElement& lefschetz_minus_one_certified() {
  static const MotivicElement v = kring::certified(MotivicElement::lefschetz(1) - MotivicElement(1));
  return v;
}

std::uint64_t common_prime(const std::vector<CylinderCell>& cells) {
  std::uint64_t p = 0;
  for (const auto& c : cells) {
    if (c.prime == 0) continue;
    if (p != 0 && p != c.prime) throw Error(ErrorCode::invalid_input, "cells built for different primes");
    p = c.prime;
  }
  return p;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::whole: return "whole";
    case Provenance::disc: return "disc";
    case Provenance::orbit: return "orbit";
    case Provenance::order_stratum: return "order-stratum";
    case Provenance::complement: return "complement";
    case Provenance::product: return "product";
    case Provenance::refinement: return "refinement";
    case Provenance::disjoint_union: return "disjoint-union";
  }
  return "?";
}

bool CylinderCell::contains(const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) const {
  if (ring.n() < level) throw Error(ErrorCode::invalid_input, "membership needs ring level >= cell level");
  if (static_cast<std::int64_t>(x.size()) != d) throw Error(ErrorCode::invalid_input, "point has wrong dimension");
  return membership(ring, x);
}

CylinderCell whole_space(std::int64_t d) {
  if (d < 1) throw Error(ErrorCode::invalid_input, "ambient dimension must be >= 1");
  CylinderCell c;
  c.d = d;
  c.level = 0;
  c.image_class = MotivicElement(1);
  c.membership = [](const TruncatedRing&, std::span<const TruncatedRing::Element>) { return true; };
  c.provenance = Provenance::whole;
  if (d == 1) c.disc = Disc{0, 0};
  return c;
}

CylinderCell disc(const Integer& center, std::int64_t radius, std::uint64_t p) {
  check_prime(p);
  if (radius < 0) throw Error(ErrorCode::invalid_input, "disc radius must be >= 0");
  const Integer modulus = ipow(Integer(p), static_cast<std::uint64_t>(radius));
  Integer c = center % modulus;
  if (c < 0) c += modulus;
  CylinderCell cell;
  cell.level = radius;
  cell.image_class = MotivicElement(1);
  cell.membership = [c, radius](const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) {
    return ring.ord(ring.sub(x[0], ring.from_integer(c))) >= radius;
  };
  cell.provenance = Provenance::disc;
  cell.prime = p;
  cell.disc = Disc{c, radius};
  return cell;
}

CylinderCell orbit_cell(const IntPoly& m, std::int64_t n, std::uint64_t p) {
  if (n < 1) throw Error(ErrorCode::invalid_input, "orbit cell level must be >= 1");
  CylinderCell cell;
  cell.level = n;
  cell.image_class = residue_root_class(m, p);
  cell.membership = [m, n](const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) {
    return padic::ord_trunc(m, ring, x[0]).order >= n;
  };
  cell.provenance = Provenance::orbit;
  cell.prime = p;
  if (m.degree() == 1) {
    const Integer modulus = ipow(Integer(p), static_cast<std::uint64_t>(n));
    Integer c = (-m.coeff(0)) % modulus;
    if (c < 0) c += modulus;
    cell.disc = Disc{c, n};
  }
  return cell;
}

CylinderCell poly_order_stratum(const IntPoly& m, std::int64_t e, std::uint64_t p) {
  if (e < 0) throw Error(ErrorCode::invalid_input, "order must be >= 0");
  const MotivicElement roots = residue_root_class(m, p);
  CylinderCell cell;
  cell.level = e + 1;
  if (e == 0) {
    cell = complement(orbit_cell(m, 1, p));
  } else {
    cell.image_class = roots * lefschetz_minus_one_certified();
  }
  cell.membership = [m, e](const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) {
    const auto o = padic::ord_trunc(m, ring, x[0]);
    return !o.at_least && o.order == e;
  };
  cell.provenance = Provenance::order_stratum;
  cell.prime = p;
  cell.constant_order = ConstantOrder{m, e};
  return cell;
}

CylinderCell complement(const CylinderCell& a) {
  const std::int64_t k = a.level * a.d;
  CylinderCell c;
  c.d = a.d;
  c.level = a.level;
  c.image_class = kring::complement_class(k, a.image_class);
  c.membership = [inner = a.membership](const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) {
    return !inner(ring, x);
  };
  c.provenance = Provenance::complement;
  c.prime = a.prime;
  return c;
}

CylinderCell refine_level(const CylinderCell& a, std::int64_t k) {
  if (k < 0) throw Error(ErrorCode::invalid_input, "refinement step must be >= 0");
  CylinderCell c = a;
  c.level = a.level + k;
  c.image_class = a.image_class.times_lefschetz(k * a.d);
  c.provenance = Provenance::refinement;
  for (auto& part : c.components) part = refine_level(part, k);
  return c;
}

CylinderCell product(const CylinderCell& a, const CylinderCell& b) {
  const std::int64_t level = std::max(a.level, b.level);
  const CylinderCell ra = refine_level(a, level - a.level);
  const CylinderCell rb = refine_level(b, level - b.level);
  CylinderCell c;
  c.d = a.d + b.d;
  c.level = level;
  c.image_class = ra.image_class * rb.image_class;
  const auto split = static_cast<std::size_t>(a.d);
  c.membership = [ma = a.membership, mb = b.membership, split](const TruncatedRing& ring,
                                                             std::span<const TruncatedRing::Element> x) {
    return ma(ring, x.first(split)) && mb(ring, x.subspan(split));
  };
  c.provenance = Provenance::product;
  c.prime = common_prime({a, b});
  return c;
}

CylinderCell disjoint_union(const std::vector<CylinderCell>& cells, const DisjointnessCheck& check) {
  if (cells.empty()) throw Error(ErrorCode::invalid_input, "empty union");
  const std::int64_t d = cells.front().d;
  std::int64_t level = 0;
  for (const auto& c : cells) {
    if (c.d != d) throw Error(ErrorCode::invalid_input, "cells of different ambient dimension");
    level = std::max(level, c.level);
  }
  const std::uint64_t p = common_prime(cells);
  const std::vector<std::uint64_t> primes = p != 0 ? std::vector<std::uint64_t>{p} : std::vector<std::uint64_t>{2, 3};
  for (std::uint64_t prime : primes) {
    for (std::int64_t f : check.extension_degrees) {
      const Integer points = ipow(ipow(Integer(prime), static_cast<std::uint64_t>(f * std::max<std::int64_t>(level, 1))),
                                  static_cast<std::uint64_t>(d));
      if (points > check.max_points) continue;
      const TruncatedRing ring(prime, f, std::max<std::int64_t>(level, 1));
      const Rational overlap = padic::haar_measure(
          [&cells](const TruncatedRing& r, std::span<const TruncatedRing::Element> x) {
            int hits = 0;
            for (const auto& c : cells) {
              if (c.membership(r, x) && ++hits > 1) return true;
            }
            return false;
          },
          ring, d, {.budget = check.max_points, .threads = 1});
      if (overlap != 0) {
        throw Error(ErrorCode::not_disjoint, "cells overlap on a set of Haar measure " + motivic::to_string(overlap) +
                                                 " at p=" + std::to_string(prime) + ", f=" + std::to_string(f));
      }
    }
  }
  CylinderCell u;
  u.d = d;
  u.level = level;
  u.image_class = MotivicElement();
  for (const auto& c : cells) {
    const CylinderCell lifted = refine_level(c, level - c.level);
    u.image_class = u.image_class + lifted.image_class;
    u.components.push_back(c);
  }
  u.membership = [cells](const TruncatedRing& ring, std::span<const TruncatedRing::Element> x) {
    return std::any_of(cells.begin(), cells.end(), [&](const CylinderCell& c) { return c.membership(ring, x); });
  };
  u.provenance = Provenance::disjoint_union;
  u.prime = p;
  return u;
}

MotivicElement measure_stable(const CylinderCell& a) { return a.image_class.times_lefschetz(-a.level * a.d); }

kring::Truth measure_at_most_one(const CylinderCell& a) {
  const MotivicElement rest = measure_stable(complement(a));
  if (rest.has_certificate() && rest == MotivicElement(1) - measure_stable(a)) return kring::Truth::yes;
  return kring::leq(measure_stable(a), MotivicElement(1));
}

CylinderCell MeasurableSet::cell(std::int64_t i) const {
  if (i < 0) throw Error(ErrorCode::invalid_input, "negative family index");
  const auto lead = static_cast<std::int64_t>(leading.size());
  if (i < lead) return leading[static_cast<std::size_t>(i)];
  if (!tail) throw Error(ErrorCode::invalid_input, "family index past a finite family");
  return tail(i - lead);
}

MeasurableSet make_measurable_set(std::vector<CylinderCell> leading, std::function<CylinderCell(std::int64_t)> tail,
                                  topology::SeriesDescriptor tail_measures, std::int64_t probe,
                                  const DisjointnessCheck& check) {
  MeasurableSet set{std::move(leading), std::move(tail), std::move(tail_measures), std::nullopt};
  const bool has_tail = static_cast<bool>(set.tail);
  if (!has_tail && (!set.tail_measures.head.empty() || !set.tail_measures.geometric.empty())) {
    throw Error(ErrorCode::invalid_input, "tail measures given without tail cells");
  }
  std::vector<CylinderCell> prefix = set.leading;
  if (has_tail) {
    for (std::int64_t i = 0; i < probe; ++i) {
      CylinderCell c = set.tail(i);
      if (measure_stable(c) != set.tail_measures.term(i)) {
        throw Error(ErrorCode::invalid_input, "tail measure " + std::to_string(i) + " does not match its cell");
      }
      prefix.push_back(std::move(c));
    }
  }
  if (prefix.size() > 1) (void)disjoint_union(prefix, check);
  try {
    set.certificate = topology::series_sum(set.tail_measures);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::uncertified_coefficient) throw;
  }
  return set;
}

MeasurableSet order_strata(const IntPoly& m, std::uint64_t p) {
  const MotivicElement roots = residue_root_class(m, p);
  topology::SeriesDescriptor measures;
  // mu(ord = i + 1) = [roots] (L - 1) L^{-(i + 2)}
  measures.geometric.push_back({roots * lefschetz_minus_one_certified(), 2, 1, 0});
  return make_measurable_set({poly_order_stratum(m, 0, p)},
                             [m, p](std::int64_t i) { return poly_order_stratum(m, i + 1, p); }, measures);
}

MotivicElement measure_countable_union(const MeasurableSet& set) {
  if (!set.certificate) throw Error(ErrorCode::uncertified_union, "tail measures are not certified summable");
  MotivicElement total = set.certificate->sum;
  for (const auto& c : set.leading) total = total + measure_stable(c);
  return total;
}

bool in_family_prefix(const MeasurableSet& set, std::int64_t count, const TruncatedRing& ring,
                      std::span<const TruncatedRing::Element> x) {
  for (std::int64_t i = 0; i < count; ++i) {
    if (set.cell(i).contains(ring, x)) return true;
  }
  return false;
}

}  // namespace motivic::arcs
