#include "motivic/error.hpp"
#include "motivic/numeric.hpp"

namespace motivic {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t valuation(const Integer& z, std::uint64_t p) {
  if (z == 0) throw Error(ErrorCode::invalid_input, "valuation of zero");
  Integer t = z;
  std::int64_t v = 0;
  while (t % p == 0) {
    t /= p;
    ++v;
  }
  return v;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_degree: return "invalid-degree";
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::unsupported_denominator: return "unsupported-denominator";
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::not_squarefree: return "not-squarefree";
    case ErrorCode::uncertified_coefficient: return "uncertified-coefficient";
    case ErrorCode::invalid_ratio: return "invalid-ratio";
    case ErrorCode::unsupported_sequence: return "unsupported-sequence";
    case ErrorCode::unsupported_series: return "unsupported-series";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::unsupported_arity: return "unsupported-arity";
    case ErrorCode::unsupported_cell: return "unsupported-cell";
    case ErrorCode::not_disjoint: return "not-disjoint";
    case ErrorCode::uncertified_union: return "uncertified-union";
    case ErrorCode::unsupported_ramified_branch: return "unsupported-ramified-branch";
    case ErrorCode::unsupported_region: return "unsupported-region";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace motivic
