#include "motivic/cli/app.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "motivic/cli/json_io.hpp"
#include "motivic/cli/verify.hpp"
#include "motivic/error.hpp"
#include "motivic/kring/expression.hpp"
#include "motivic/topology/series.hpp"

namespace motivic::cli {

namespace {

// Defaults, then the config file, then flags.
struct Settings {
  std::vector<std::uint64_t> p_grid = {2, 3, 5};
  std::vector<std::int64_t> f_grid = {1, 2};
  std::vector<std::int64_t> n_grid = {4, 5};
  std::uint64_t budget = 10'000'000;
  std::int64_t probe_depth = 40;
  unsigned threads = 0;
};

template <typename T>
std::vector<T> int_list(const Json& v, const std::string& key) {
  std::vector<T> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<T>());
    return out;
  }
  if (!v.is_array()) throw Error(ErrorCode::parse_error, "config key \"" + key + "\" must be an integer or a list");
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw Error(ErrorCode::parse_error, "config key \"" + key + "\" holds a non-integer");
    out.push_back(x.get<T>());
  }
  return out;
}

void apply_config(Settings& s, const std::string& path) {
  const Json j = read_json_argument("@" + path);
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "p-grid") {
      s.p_grid = int_list<std::uint64_t>(v, key);
    } else if (key == "f-grid") {
      s.f_grid = int_list<std::int64_t>(v, key);
    } else if (key == "n") {
      s.n_grid = int_list<std::int64_t>(v, key);
    } else if (key == "budget") {
      s.budget = int_list<std::uint64_t>(v, key).at(0);
    } else if (key == "probe-depth") {
      s.probe_depth = int_list<std::int64_t>(v, key).at(0);
    } else if (key == "threads") {
      s.threads = int_list<unsigned>(v, key).at(0);
    } else {
      throw Error(ErrorCode::parse_error, "unknown config key \"" + key + "\"");
    }
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::division_by_zero:
      return exit_parse_error;
    default:
      return exit_unsupported;
  }
}

std::string text_of(const kring::MotivicElement& x) { return x.to_string(); }

Json counts_json(const kring::MotivicElement& x, std::uint64_t p, const std::vector<std::int64_t>& fs) {
  Json out = Json::array();
  for (std::int64_t f : fs) {
    out.push_back(Json{{"f_ext", f}, {"q", to_json(ipow(Integer(p), static_cast<std::uint64_t>(f)))},
                       {"count", to_json(x.count(p, f))}});
  }
  return out;
}

void check_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_input, std::to_string(p) + " is not prime");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  spdlog::logger log("motivic", sink);
  log.set_pattern("[%l] %v");
  log.set_level(spdlog::level::warn);

  CLI::App app{"Exact motivic integration and p-adic cross-checks", "motivic"};
  app.require_subcommand(1);
  // Subcommands inherit this, so global flags may follow the command name.
  app.fallthrough();
  std::string config_path;
  bool pretty = false;
  bool verbose = false;
  app.add_option("--config", config_path, "JSON file with p-grid, f-grid, n, budget, probe-depth, threads");
  app.add_flag("--pretty", pretty, "Human-readable text instead of JSON");
  app.add_flag("-v,--verbose", verbose, "Log progress on stderr");

  // eval
  auto* eval = app.add_subcommand("eval", "Canonical form of a ring expression");
  std::string expr;
  std::vector<std::int64_t> eval_count;
  eval->add_option("expr", expr, "e.g. \"1/(1-1/L)\" or \"[2]*[2]\"")->required();
  eval->add_option("--count", eval_count, "Point count at q = p^f")->expected(2)->type_name("P F");

  // series
  auto* series = app.add_subcommand("series", "Certified sum of a geometric series descriptor");
  std::string series_desc;
  std::vector<std::int64_t> series_count;
  std::int64_t probe_flag = 0;
  series->add_option("descriptor", series_desc, "JSON {head:[...], geometric:[{coeff,start,ratio}]} or @file")
      ->required();
  series->add_option("--probe", probe_flag, "Index at which the tail bounds are reported");
  series->add_option("--count", series_count, "Point count at q = p^f")->expected(2)->type_name("P F");

  // measure
  auto* measure = app.add_subcommand("measure", "Motivic measure of a cell descriptor");
  std::string cell_desc;
  std::uint64_t measure_p = 0;
  std::vector<std::int64_t> measure_count;
  measure->add_option("descriptor", cell_desc, "JSON cell descriptor or @file")->required();
  measure->add_option("--p", measure_p, "Residue characteristic")->required();
  measure->add_option("--count", measure_count, "Extension degrees to count at")->delimiter(',');

  // integrate
  auto* integ = app.add_subcommand("integrate", "Integral of |f|^s over Z_p");
  std::string integ_f;
  std::uint64_t integ_p = 0;
  std::int64_t integ_s = 1;
  std::vector<std::int64_t> integ_count;
  integ->add_option("f", integ_f, "Integer polynomial in X, e.g. \"X^2+1\"")->required();
  integ->add_option("--p", integ_p, "Prime")->required();
  integ->add_option("--s", integ_s, "Exponent s >= 1")->capture_default_str();
  integ->add_option("--count", integ_count, "Extension degrees to count at")->delimiter(',');

  // verify
  auto* verify = app.add_subcommand("verify", "Compare point counts of the integral with p-adic enumeration");
  std::string verify_f;
  std::vector<std::uint64_t> p_grid;
  std::vector<std::int64_t> f_grid;
  std::vector<std::int64_t> n_grid;
  std::int64_t verify_s = 1;
  std::string mode = "mixed";
  std::uint64_t budget = 0;
  unsigned threads = 0;
  bool timing = false;
  std::string tamper;
  verify->add_option("f", verify_f, "Integer polynomial in X")->required();
  auto* p_opt = verify->add_option("--p-grid", p_grid, "Primes")->delimiter(',');
  auto* f_opt = verify->add_option("--f-grid", f_grid, "Extension degrees")->delimiter(',');
  auto* n_opt = verify->add_option("--n", n_grid, "Truncation levels")->delimiter(',');
  verify->add_option("--s", verify_s, "Exponent s >= 1")->capture_default_str();
  verify->add_option("--mode", mode, "mixed (Z_p) or equal (F_p[[t]])")
      ->check(CLI::IsMember({"mixed", "equal"}))
      ->capture_default_str();
  auto* budget_opt = verify->add_option("--budget", budget, "Maximum points enumerated per grid point");
  auto* threads_opt = verify->add_option("--threads", threads, "Worker threads, 0 for all cores");
  verify->add_flag("--timing", timing, "Include per-row timings in the JSON report");
  verify->add_option("--tamper", tamper, "Add this rational to every motivic value")->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_parse_error;
  }
  if (verbose) log.set_level(spdlog::level::info);

  try {
    Settings settings;
    if (!config_path.empty()) {
      apply_config(settings, config_path);
      log.info("config {} loaded", config_path);
    }

    if (*eval) {
      const auto x = kring::parse_ring_expression(expr);
      if (!eval_count.empty()) {
        const auto p = static_cast<std::uint64_t>(eval_count[0]);
        check_prime(p);
        if (eval_count[1] < 1) throw Error(ErrorCode::invalid_input, "extension degree must be >= 1");
        const Rational c = x.count(p, eval_count[1]);
        if (pretty) {
          out << motivic::to_string(c) << "\n";
        } else {
          out << Json{{"count", to_json(c)}}.dump() << "\n";
        }
        return exit_ok;
      }
      out << (pretty ? text_of(x) : to_json(x).dump()) << "\n";
      return exit_ok;
    }

    if (*series) {
      const auto desc = parse_series(read_json_argument(series_desc));
      const std::int64_t probe = probe_flag > 0 ? probe_flag : settings.probe_depth;
      const auto cert = topology::series_sum(desc);
      log.info("series certified, probing tail at {}", probe);
      if (pretty) {
        out << "sum        " << text_of(cert.sum) << "\n";
        out << "weight     " << cert.weight.C << " * n^" << cert.weight.l << " + " << cert.weight.D << "\n";
        out << "tail dim   " << cert.dim_bound(probe).to_string() << " (from term " << probe << ")\n";
      } else {
        Json j{{"sum", to_json(cert.sum)},
               {"weight", to_json(cert.weight)},
               {"probe", probe},
               {"tail_dimension_bound", to_json(cert.dim_bound(probe))}};
        if (!series_count.empty()) {
          const auto p = static_cast<std::uint64_t>(series_count[0]);
          check_prime(p);
          j["count"] = to_json(cert.sum.count(p, series_count[1]));
        }
        out << j.dump() << "\n";
      }
      return exit_ok;
    }

    if (*measure) {
      check_prime(measure_p);
      const Json desc = read_json_argument(cell_desc);
      Json j;
      kring::MotivicElement mu;
      if (is_countable_descriptor(desc)) {
        mu = arcs::measure_countable_union(parse_countable(desc, measure_p));
        j["kind"] = "countable";
      } else {
        const auto cell = parse_cell(desc, measure_p);
        mu = arcs::measure_stable(cell);
        j["kind"] = arcs::to_string(cell.provenance);
        j["d"] = cell.d;
        j["level"] = cell.level;
        j["class"] = to_json(cell.image_class);
      }
      j["measure"] = to_json(mu);
      if (!measure_count.empty()) j["counts"] = counts_json(mu, measure_p, measure_count);
      if (pretty) {
        out << "measure  " << text_of(mu) << "\n";
        if (j.contains("counts")) {
          for (const auto& c : j["counts"]) out << "q=" << c["q"].dump() << "  " << c["count"].get<std::string>() << "\n";
        }
      } else {
        out << j.dump() << "\n";
      }
      return exit_ok;
    }

    if (*integ) {
      const IntPoly f = parse_int_poly(integ_f);
      const auto r = [&] {
        try {
          return integrate::integrate_abs(f, integ_s, integ_p);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::not_squarefree) log.error("hint: use --s for powers of a squarefree polynomial");
          throw;
        }
      }();
      log.info("integrated {} at p={} with {} decomposition entries", f.to_string(), integ_p, r.decomposition.size());
      if (pretty) {
        out << "value  " << text_of(r.value) << "\n";
        for (const auto& e : r.decomposition) {
          out << "  " << integrate::to_string(e.kind) << "  depth=" << e.node.depth << "  measure=" << text_of(e.measure)
              << "  contribution=" << text_of(e.contribution) << "\n";
        }
        for (std::int64_t fe : integ_count) {
          out << "q=" << ipow(Integer(integ_p), static_cast<std::uint64_t>(fe)) << "  "
              << motivic::to_string(r.value.count(integ_p, fe)) << "\n";
        }
      } else {
        Json j = to_json(r);
        if (!integ_count.empty()) j["counts"] = counts_json(r.value, integ_p, integ_count);
        out << j.dump() << "\n";
      }
      return exit_ok;
    }

    if (*verify) {
      VerifyOptions o;
      o.f = parse_int_poly(verify_f);
      o.s = verify_s;
      o.p_grid = p_opt->count() > 0 ? p_grid : settings.p_grid;
      o.f_grid = f_opt->count() > 0 ? f_grid : settings.f_grid;
      o.n_grid = n_opt->count() > 0 ? n_grid : settings.n_grid;
      o.budget = budget_opt->count() > 0 ? budget : settings.budget;
      o.threads = threads_opt->count() > 0 ? threads : settings.threads;
      o.mode = padic::parse_ring_mode(mode);
      if (!tamper.empty()) {
        try {
          o.tamper = Rational(tamper);
        } catch (const std::exception&) {
          throw Error(ErrorCode::parse_error, "bad rational \"" + tamper + "\"");
        }
      }
      for (std::uint64_t p : o.p_grid) check_prime(p);
      for (std::int64_t fe : o.f_grid) {
        if (fe < 1) throw Error(ErrorCode::invalid_input, "extension degree must be >= 1");
      }
      for (std::int64_t n : o.n_grid) {
        if (n < 1) throw Error(ErrorCode::invalid_input, "level must be >= 1");
      }
      const auto report = run_verify(o);
      for (const auto& row : report.rows) {
        log.info("p={} f={} n={} {} in {:.1f} ms", row.p, row.f_ext, row.n, to_string(row.verdict), row.millis);
        if (row.verdict == VerifyRow::Verdict::fail) {
          log.warn("p={} f={} n={}: value {} outside [{}, {}]", row.p, row.f_ext, row.n, motivic::to_string(*row.value),
                   motivic::to_string(*row.lo), motivic::to_string(*row.hi));
        }
      }
      out << (pretty ? to_table(report) : to_json(report, timing).dump() + "\n");
      return report.exit_code();
    }
  } catch (const Error& e) {
    log.error("{}", e.what());
    return exit_code_for(e.code());
  }
  return exit_parse_error;
}

}  // namespace motivic::cli
