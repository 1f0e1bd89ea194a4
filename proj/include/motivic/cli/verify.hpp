#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "motivic/cli/json_io.hpp"
#include "motivic/padic/truncated_ring.hpp"

namespace motivic::cli {

struct VerifyOptions {
  IntPoly f;
  std::int64_t s = 1;
  std::vector<std::uint64_t> p_grid;
  std::vector<std::int64_t> f_grid;
  std::vector<std::int64_t> n_grid;
  padic::RingMode mode = padic::RingMode::mixed;
  std::uint64_t budget = 10'000'000;
  // 0 selects hardware concurrency.
  unsigned threads = 0;
  // Test hook: added to every motivic value before comparison.
  Rational tamper = 0;
};

struct VerifyRow {
  enum class Verdict { pass, fail, unsupported, budget_exceeded };

  std::uint64_t p = 0;
  std::int64_t f_ext = 0;
  std::int64_t n = 0;
  std::uint64_t q = 0;
  Verdict verdict = Verdict::unsupported;
  // Set for pass and fail.
  std::optional<Rational> value;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  std::string error;
  double millis = 0;
};

struct VerifyReport {
  std::string integrand;
  std::int64_t s = 1;
  padic::RingMode mode = padic::RingMode::mixed;
  // Ordered by (p, f_ext, n) in grid order.
  std::vector<VerifyRow> rows;
  // Per prime; absent when integration failed.
  std::vector<std::pair<std::uint64_t, std::optional<kring::MotivicElement>>> values;

  bool all_pass() const;
  // 0 all pass, 1 any fail, else 2 when some row is unsupported or over budget.
  int exit_code() const;
};

std::string to_string(VerifyRow::Verdict v);

// Grid points run concurrently; the row order does not depend on scheduling.
VerifyReport run_verify(const VerifyOptions& options);

// Timings are included only on request so that default output is reproducible.
Json to_json(const VerifyReport& report, bool with_timing);
std::string to_table(const VerifyReport& report);

}  // namespace motivic::cli
