#pragma once

#include <string_view>

#include "motivic/kring/motivic_element.hpp"

namespace motivic::kring {

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' '-'? integer)?
//   primary := integer | 'L' | '[' integer ']' | '(' expr ')'
// Syntax errors throw parse-error; division keeps the library's errors
// (division-by-zero, unsupported-denominator).
MotivicElement parse_ring_expression(std::string_view text);

}  // namespace motivic::kring
