#include "motivic/cli/json_io.hpp"

#include <fstream>
#include <sstream>

#include "motivic/error.hpp"
#include "motivic/kring/expression.hpp"

namespace motivic::cli {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

std::int64_t int_field_or(const Json& j, const char* key, std::int64_t fallback) {
  return j.contains(key) ? int_field(j, key) : fallback;
}

Integer integer_of(const Json& v) {
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  malformed("expected an integer, got " + v.dump());
}

IntPoly poly_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_string()) return parse_int_poly(v.get<std::string>());
  if (!v.is_array()) malformed(std::string("field \"") + key + "\" must be a coefficient list or polynomial text");
  std::vector<Integer> coeffs;
  for (const auto& c : v) coeffs.push_back(integer_of(c));
  return IntPoly(std::move(coeffs));
}

kring::MotivicElement element_of(const Json& v) {
  if (v.is_number_integer()) return kring::MotivicElement(v.get<std::int64_t>());
  if (v.is_string()) return kring::parse_ring_expression(v.get<std::string>());
  malformed("expected a ring expression, got " + v.dump());
}

}  // namespace

Json to_json(const Integer& z) {
  if (fits_int64(z)) return Json(static_cast<std::int64_t>(z));
  return Json(z.str());
}

Json to_json(const Rational& r) { return Json(motivic::to_string(r)); }

Json to_json(const kring::MotivicElement& x) {
  Json terms = Json::array();
  for (const auto& [atom, coeff] : x.terms()) {
    const auto form = coeff.product_form();
    Json num = Json::array();
    for (const auto& c : form.numerator.coeffs()) num.push_back(to_json(c));
    Json term;
    term["atom"] = atom;
    term["num"] = std::move(num);
    term["den"] = Json{{"Lpow", form.l_power}, {"cyclo", form.cyclo}};
    terms.push_back(std::move(term));
  }
  return Json{{"terms", std::move(terms)}};
}

Json to_json(const topology::WeightGrowth& w) {
  return Json{{"C", to_json(w.C)}, {"l", w.l}, {"D", to_json(w.D)}};
}

Json to_json(const kring::Dimension& d) {
  if (d.is_neg_inf()) return Json("-inf");
  return Json(d.value());
}

Json to_json(const integrate::IntegralResult& r) {
  Json cells = Json::array();
  for (const auto& e : r.decomposition) {
    Json entry;
    entry["kind"] = integrate::to_string(e.kind);
    entry["digits"] = e.node.digits;
    entry["depth"] = e.node.depth;
    entry["residual"] = e.node.residual.to_string();
    if (e.kind == integrate::DecompositionEntry::Kind::unit_locus) {
      entry["order"] = e.node.shift;
    } else {
      entry["atom_degree"] = e.atom_degree;
      entry["factor_count"] = e.factor_count;
      // Cell i of the family has ord f = order_start + i.
      entry["order_start"] = e.node.shift + 1;
    }
    entry["measure"] = to_json(e.measure);
    entry["contribution"] = to_json(e.contribution);
    cells.push_back(std::move(entry));
  }
  return Json{{"value", to_json(r.value)},
              {"decomposition", std::move(cells)},
              {"max_depth", r.max_depth},
              {"depth_bound", r.depth_bound}};
}

topology::SeriesDescriptor parse_series(const Json& j) {
  if (!j.is_object()) malformed("series descriptor must be an object");
  topology::SeriesDescriptor s;
  if (j.contains("head")) {
    if (!j.at("head").is_array()) malformed("\"head\" must be a list");
    for (const auto& v : j.at("head")) s.head.push_back(element_of(v));
  }
  if (j.contains("geometric")) {
    if (!j.at("geometric").is_array()) malformed("\"geometric\" must be a list");
    for (const auto& g : j.at("geometric")) {
      s.geometric.push_back({element_of(field(g, "coeff")), int_field(g, "start"), int_field_or(g, "ratio", 1),
                             int_field_or(g, "power", 0)});
    }
  }
  return s;
}

arcs::CylinderCell parse_cell(const Json& j, std::uint64_t p) {
  const Json& kind_v = field(j, "kind");
  if (!kind_v.is_string()) malformed("\"kind\" must be a string");
  const std::string kind = kind_v.get<std::string>();
  if (kind == "whole") return arcs::whole_space(int_field_or(j, "d", 1));
  if (kind == "disc") return arcs::disc(integer_of(field(j, "center")), int_field(j, "radius"), p);
  if (kind == "orbit") return arcs::orbit_cell(poly_field(j, "poly"), int_field(j, "level"), p);
  if (kind == "stratum") return arcs::poly_order_stratum(poly_field(j, "poly"), int_field(j, "order"), p);
  if (kind == "complement") return arcs::complement(parse_cell(field(j, "of"), p));
  if (kind == "refine") return arcs::refine_level(parse_cell(field(j, "of"), p), int_field(j, "by"));
  if (kind == "product" || kind == "union") {
    const Json& list = field(j, kind == "product" ? "factors" : "cells");
    if (!list.is_array() || list.empty()) malformed("\"" + kind + "\" needs a non-empty list");
    std::vector<arcs::CylinderCell> cells;
    for (const auto& c : list) cells.push_back(parse_cell(c, p));
    if (kind == "union") return arcs::disjoint_union(cells);
    arcs::CylinderCell out = cells.front();
    for (std::size_t i = 1; i < cells.size(); ++i) out = arcs::product(out, cells[i]);
    return out;
  }
  malformed("unknown cell kind \"" + kind + "\"");
}

bool is_countable_descriptor(const Json& j) {
  return j.is_object() && j.contains("kind") && j.at("kind") == "strata";
}

arcs::MeasurableSet parse_countable(const Json& j, std::uint64_t p) {
  if (!is_countable_descriptor(j)) malformed("expected {\"kind\":\"strata\",...}");
  return arcs::order_strata(poly_field(j, "poly"), p);
}

Json read_json_argument(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw Error(ErrorCode::parse_error, "cannot read " + text.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

}  // namespace motivic::cli
