#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace motivic {

enum class ErrorCode {
  invalid_degree,
  invalid_input,
  unsupported_denominator,
  division_by_zero,
  not_squarefree,
  uncertified_coefficient,
  invalid_ratio,
  unsupported_sequence,
  unsupported_series,
  budget_exceeded,
  unsupported_arity,
  unsupported_cell,
  not_disjoint,
  uncertified_union,
  unsupported_ramified_branch,
  unsupported_region,
  parse_error,
  internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace motivic
