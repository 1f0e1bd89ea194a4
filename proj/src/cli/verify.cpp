#include "motivic/cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <thread>

#include "motivic/error.hpp"
#include "motivic/padic/oracle.hpp"

namespace motivic::cli {

using Verdict = VerifyRow::Verdict;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unsupported: return "unsupported";
    case Verdict::budget_exceeded: return "budget-exceeded";
  }
  return "unsupported";
}

bool VerifyReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.verdict == Verdict::pass; });
}

int VerifyReport::exit_code() const {
  if (all_pass()) return 0;
  const bool failed = std::any_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.verdict == Verdict::fail; });
  return failed ? 1 : 2;
}

VerifyReport run_verify(const VerifyOptions& o) {
  VerifyReport report;
  report.integrand = o.f.to_string();
  report.s = o.s;
  report.mode = o.mode;

  std::vector<std::optional<kring::MotivicElement>> values;
  std::vector<std::string> errors;
  for (std::uint64_t p : o.p_grid) {
    try {
      values.emplace_back(integrate::integrate_abs(o.f, o.s, p).value);
      errors.emplace_back();
    } catch (const Error& e) {
      // Input errors apply to every prime alike.
      if (e.code() == ErrorCode::invalid_input || e.code() == ErrorCode::not_squarefree) throw;
      values.emplace_back(std::nullopt);
      errors.emplace_back(e.what());
    }
    report.values.emplace_back(p, values.back());
  }

  struct Job {
    std::size_t prime_index;
    std::int64_t f_ext;
    std::int64_t n;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < o.p_grid.size(); ++i) {
    for (std::int64_t fe : o.f_grid) {
      for (std::int64_t n : o.n_grid) jobs.push_back({i, fe, n});
    }
  }
  report.rows.resize(jobs.size());

  const auto run_job = [&](std::size_t k) {
    const Job& job = jobs[k];
    VerifyRow& row = report.rows[k];
    row.p = o.p_grid[job.prime_index];
    row.f_ext = job.f_ext;
    row.n = job.n;
    const auto start = std::chrono::steady_clock::now();
    try {
      const padic::TruncatedRing ring(row.p, job.f_ext, job.n, o.mode);
      row.q = ring.q();
      const auto& value = values[job.prime_index];
      if (!value) {
        row.verdict = Verdict::unsupported;
        row.error = errors[job.prime_index];
      } else {
        const auto iv = padic::integral_interval(o.f, o.s, ring, {.budget = o.budget, .threads = 1});
        row.value = value->count(row.p, job.f_ext) + o.tamper;
        row.lo = iv.lo;
        row.hi = iv.hi;
        row.verdict = iv.contains(*row.value) ? Verdict::pass : Verdict::fail;
      }
    } catch (const Error& e) {
      row.verdict = e.code() == ErrorCode::budget_exceeded ? Verdict::budget_exceeded : Verdict::unsupported;
      row.error = e.what();
    }
    row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  unsigned threads = o.threads != 0 ? o.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  // Strided assignment keeps the expensive large-n points spread across workers.
  padic::parallel_ranges(threads, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    for (std::uint64_t w = begin; w < end; ++w) {
      for (std::size_t k = w; k < jobs.size(); k += threads) run_job(k);
    }
  });
  return report;
}

Json to_json(const VerifyReport& report, bool with_timing) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["p"] = r.p;
    row["f_ext"] = r.f_ext;
    row["q"] = r.q;
    row["n"] = r.n;
    row["verdict"] = to_string(r.verdict);
    if (r.value) {
      row["value"] = to_json(*r.value);
      row["lo"] = to_json(*r.lo);
      row["hi"] = to_json(*r.hi);
    }
    if (!r.error.empty()) row["error"] = r.error;
    if (with_timing) row["millis"] = r.millis;
    rows.push_back(std::move(row));
  }
  Json values = Json::array();
  for (const auto& [p, v] : report.values) {
    values.push_back(Json{{"p", p}, {"value", v ? to_json(*v) : Json(nullptr)}});
  }
  return Json{{"integrand", report.integrand},
              {"s", report.s},
              {"mode", padic::to_string(report.mode)},
              {"values", std::move(values)},
              {"rows", std::move(rows)},
              {"all_pass", report.all_pass()}};
}

std::string to_table(const VerifyReport& report) {
  std::vector<std::vector<std::string>> cells = {{"p", "f", "q", "n", "value", "lo", "hi", "verdict", "ms"}};
  for (const auto& r : report.rows) {
    std::ostringstream ms;
    ms.precision(1);
    ms << std::fixed << r.millis;
    cells.push_back({std::to_string(r.p), std::to_string(r.f_ext), std::to_string(r.q), std::to_string(r.n),
                     r.value ? motivic::to_string(*r.value) : "-", r.lo ? motivic::to_string(*r.lo) : "-",
                     r.hi ? motivic::to_string(*r.hi) : "-", to_string(r.verdict), ms.str()});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  out << report.integrand << "  s=" << report.s << "  mode=" << padic::to_string(report.mode) << "\n";
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << (c == 0 ? "" : "  ") << std::string(width[c] - line[c].size(), ' ') << line[c];
    }
    out << "\n";
  }
  out << (report.all_pass() ? "all pass" : "not all pass") << "\n";
  return out.str();
}

}  // namespace motivic::cli
