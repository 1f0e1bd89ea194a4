#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "motivic/arcs/cylinder.hpp"
#include "motivic/integrate/integrate.hpp"
#include "motivic/kring/motivic_element.hpp"
#include "motivic/topology/series.hpp"

namespace motivic::cli {

// Insertion-ordered so that dumps are byte-stable.
using Json = nlohmann::ordered_json;

// Number when it fits in 64 bits, decimal string otherwise.
Json to_json(const Integer& z);
// Always a string "a" or "a/b".
Json to_json(const Rational& r);
// {"terms":[{"atom":a,"num":[c0,...],"den":{"Lpow":l,"cyclo":[k1,...]}}]}
Json to_json(const kring::MotivicElement& x);
Json to_json(const topology::WeightGrowth& w);
Json to_json(const kring::Dimension& d);
Json to_json(const integrate::IntegralResult& r);

// {"head":[expr,...],"geometric":[{"coeff":expr,"start":e,"ratio":r,"power":k}]}
// where expr is a ring-expression string or an integer. Malformed -> parse-error.
topology::SeriesDescriptor parse_series(const Json& j);

// Cell descriptors, p is the residue characteristic:
//   {"kind":"whole","d":d}                  {"kind":"disc","center":c,"radius":r}
//   {"kind":"orbit","poly":[c0,...],"level":n}
//   {"kind":"stratum","poly":[c0,...],"order":e}
//   {"kind":"complement","of":cell}         {"kind":"refine","of":cell,"by":k}
//   {"kind":"product","factors":[cell,...]} {"kind":"union","cells":[cell,...]}
// Unknown kinds and missing fields -> parse-error.
arcs::CylinderCell parse_cell(const Json& j, std::uint64_t p);

// {"kind":"strata","poly":[c0,...]}: the order strata of a polynomial.
bool is_countable_descriptor(const Json& j);
arcs::MeasurableSet parse_countable(const Json& j, std::uint64_t p);

// Inline JSON text, or "@path" for a file. Syntax errors -> parse-error.
Json read_json_argument(const std::string& text);

}  // namespace motivic::cli
