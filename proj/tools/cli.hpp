#pragma once

// Command-line front end. `parse` turns argv into a RunConfig, `run` executes
// it and writes the report to `out`; `main` glues the two and maps every
// outcome onto exit status 0 (affirmative), 1 (negative) or 2 (input error).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "subadd/subadd.hpp"

namespace subadd::cli {

enum class Subcommand { certify, scan, violate, table, oracles, cone };
enum class Format { json, csv, text };

inline const char* to_string(Subcommand s) {
  switch (s) {
    case Subcommand::certify: return "certify";
    case Subcommand::scan: return "scan";
    case Subcommand::violate: return "violate";
    case Subcommand::table: return "table";
    case Subcommand::oracles: return "oracles";
    case Subcommand::cone: return "cone";
  }
  return "?";
}

struct ConeOptions {
  std::size_t n_base = 20;
  std::size_t n_reserve = 5;
  std::size_t pairs = 10'000;
  std::size_t roundtrips = 1'000;
  unsigned liminf_n = 600;
  std::string eps = "1/100";
  std::size_t eps_samples = 1'000;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::certify;
  std::optional<Params> params;
  std::optional<Order> order;
  std::optional<ScanConfig> scan;
  Format format = Format::text;
  unsigned precision_bits = 128;
  std::uint64_t seed = 1;
  ConeOptions cone;
};

inline void validate(const RunConfig& cfg) {
  if (cfg.precision_bits == 0 || cfg.precision_bits > 512) {
    throw input_error("--precision-bits must lie in [1, 512]");
  }
  switch (cfg.subcommand) {
    case Subcommand::certify:
    case Subcommand::scan:
    case Subcommand::violate:
      if (!cfg.params) throw input_error(std::string(to_string(cfg.subcommand)) + " requires --mu, --sigma and --alpha");
      break;
    default: break;
  }
  if ((cfg.subcommand == Subcommand::scan || cfg.subcommand == Subcommand::violate) && !cfg.order) {
    throw input_error(std::string(to_string(cfg.subcommand)) + " requires an order --a");
  }
  if (cfg.scan) validate(*cfg.scan);
}

// ---------------------------------------------------------------------------
// Cone demonstration report

struct KneeRow {
  unsigned n = 0;
  unsigned prime = 0;
  std::string q;
  std::string certified;  // tri-state of 1 - 2^-n < p_n q_n < 1
  friend bool operator==(const KneeRow&, const KneeRow&) = default;
};

// Enclosures rounded to double for display; the checks ran in 128 bits.
struct SeqRow {
  unsigned index = 0;
  double x = 0.0;
  double fx = 0.0;
  bool certified = false;
  friend bool operator==(const SeqRow&, const SeqRow&) = default;
};

struct ConeReport {
  std::size_t n_base = 0;
  std::size_t n_reserve = 0;
  std::vector<KneeRow> knees;
  std::size_t pairs = 0;
  std::map<std::string, std::size_t> pair_cases;
  std::size_t pair_failures = 0;
  std::size_t roundtrips = 0;
  std::size_t roundtrip_failures = 0;
  std::vector<SeqRow> limsup;
  std::vector<SeqRow> liminf;
  bool liminf_below_1e3 = false;
  std::string eps;
  std::size_t eps_samples = 0;
  bool upper_bound = false;
  friend bool operator==(const ConeReport&, const ConeReport&) = default;

  bool passed() const {
    for (const auto& k : knees) {
      if (k.certified != "TRUE") return false;
    }
    for (const auto& r : limsup) {
      if (!r.certified) return false;
    }
    for (const auto& r : liminf) {
      if (!r.certified) return false;
    }
    return pair_failures == 0 && roundtrip_failures == 0 && liminf_below_1e3 && upper_bound;
  }
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(KneeRow, n, prime, q, certified)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SeqRow, index, x, fx, certified)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConeReport, n_base, n_reserve, knees, pairs, pair_cases, pair_failures, roundtrips,
                                   roundtrip_failures, limsup, liminf, liminf_below_1e3, eps, eps_samples,
                                   upper_bound)

inline cone::Rational parse_rational(const std::string& s) {
  try {
    return cone::Rational(s);
  } catch (const std::exception&) {
    throw input_error("not a rational number: '" + s + "'");
  }
}

inline ConeReport run_cone(const ConeOptions& opt, std::uint64_t seed) {
  using namespace cone;
  if (opt.liminf_n < 1) throw input_error("--liminf-n must be >= 1");
  const GeneratorTable table = make_generators(opt.n_base, opt.n_reserve);
  ConeReport rep;
  rep.n_base = opt.n_base;
  rep.n_reserve = opt.n_reserve;

  for (unsigned n = 1; n <= table.n_base(); ++n) {
    rep.knees.push_back({n, table.generator(base(n)).prime, table.q(n).str(), subadd::to_string(certify_q(table, n))});
  }

  std::mt19937_64 rng(seed);
  rep.pairs = opt.pairs;
  for (std::size_t i = 0; i < opt.pairs; ++i) {
    const auto [x, y] = sample_pair(table, rng);
    ++rep.pair_cases[to_string(classify_pair(x, y))];
    try {
      (void)check_subadditive_pair(table, x, y);
    } catch (const construction_error&) {
      ++rep.pair_failures;
    }
  }

  rep.roundtrips = opt.roundtrips;
  for (std::size_t i = 0; i < opt.roundtrips; ++i) {
    const ConeElement x = sample_element(table, rng);
    if (!(apply_f_inv(table, apply_f(table, x)) == x && apply_f(table, apply_f_inv(table, x)) == x)) {
      ++rep.roundtrip_failures;
    }
  }

  auto to_rows = [](const std::vector<SequenceRow>& seq) {
    std::vector<SeqRow> rows;
    for (const auto& r : seq) {
      rows.push_back({r.index, static_cast<double>(r.x.mid()), static_cast<double>(r.fx.mid()), r.certified});
    }
    return rows;
  };
  rep.limsup = to_rows(limsup_sequence(table, static_cast<unsigned>(table.n_base())));
  const auto inf_seq = liminf_sequence(table, opt.liminf_n);
  rep.liminf = to_rows(inf_seq);
  rep.liminf_below_1e3 =
      certainly_lt(inf_seq.back().fx, hp_interval(hp_real(1) / hp_real(1000))) == Tri::True;

  rep.eps = opt.eps;
  rep.eps_samples = opt.eps_samples;
  rep.upper_bound = upper_bound_check(table, parse_rational(opt.eps), opt.eps_samples, seed);
  return rep;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string num(double v, int digits = std::numeric_limits<double>::max_digits10) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

inline std::string quoted(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

inline void write_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

inline bool table_row_ok(const TableRow& r, double tolerance) {
  const bool margin_ok = std::abs(r.margin - r.entry.printed_margin) <= 1e-6;
  return margin_ok && (std::isnan(r.s2_scan_min) || r.s2_scan_min >= -tolerance);
}

inline int emit_certify(const CertificateReport& rep, Format fmt, std::ostream& out) {
  using detail::num;
  if (fmt == Format::json) {
    detail::write_json(out, rep);
  } else if (fmt == Format::csv) {
    out << "condition,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict\n";
    for (const auto& c : rep.conditions) {
      out << detail::quoted(c.name) << ',' << num(c.lhs.lo()) << ',' << num(c.lhs.hi()) << ',' << num(c.rhs.lo())
          << ',' << num(c.rhs.hi()) << ',' << to_string(c.verdict) << '\n';
    }
    out << "overall,,,,," << to_string(rep.verdict) << '\n';
  } else {
    out << "params: mu=" << rep.params.mu() << " sigma=" << rep.params.sigma() << " alpha=" << rep.params.alpha()
        << '\n';
    for (const auto& c : rep.conditions) {
      out << "  " << std::left << std::setw(8) << to_string(c.verdict) << c.name << "\n           lhs " << c.lhs
          << "  rhs " << c.rhs << '\n';
    }
    out << "verdict: " << to_string(rep.verdict) << " (" << verdict_note(rep.verdict) << ")\n";
  }
  return rep.verdict == CertVerdict::Certified ? 0 : 1;
}

inline int emit_scan(const ScanReport& rep, double tolerance, Format fmt, std::ostream& out) {
  using detail::num;
  const bool ok = rep.min_gap >= -tolerance;
  if (fmt == Format::json) {
    detail::write_json(out, rep);
  } else if (fmt == Format::csv) {
    out << "a,mu,sigma,alpha,min_gap,x,y,evaluations\n"
        << num(rep.order.value()) << ',' << num(rep.params.mu()) << ',' << num(rep.params.sigma()) << ','
        << num(rep.params.alpha()) << ',' << num(rep.min_gap) << ',' << num(rep.argmin.x) << ','
        << num(rep.argmin.y) << ',' << rep.evaluations << '\n';
  } else {
    out << "a=" << rep.order.value() << " mu=" << rep.params.mu() << " sigma=" << rep.params.sigma()
        << " alpha=" << rep.params.alpha() << '\n'
        << "min gap " << num(rep.min_gap, 10) << " at (" << num(rep.argmin.x, 10) << ", " << num(rep.argmin.y, 10)
        << ") after " << rep.evaluations << " evaluations\n"
        << (ok ? "no violation on the grid\n" : "gap is negative on the grid\n");
  }
  return ok ? 0 : 1;
}

inline int emit_violation(const std::optional<Violation>& v, Format fmt, std::ostream& out) {
  using detail::num;
  if (fmt == Format::json) {
    detail::write_json(out, v ? nlohmann::json(*v) : nlohmann::json(nullptr));
  } else if (fmt == Format::csv) {
    out << "a,mu,sigma,alpha,x,y,margin\n";
    if (v) {
      out << num(v->order.value()) << ',' << num(v->params.mu()) << ',' << num(v->params.sigma()) << ','
          << num(v->params.alpha()) << ',' << num(v->point.x) << ',' << num(v->point.y) << ',' << num(v->margin)
          << '\n';
    }
  } else if (v) {
    out << "violation at (" << num(v->point.x, 10) << ", " << num(v->point.y, 10) << "): f(ax+y) - a f(x) - f(y) = "
        << num(v->margin, 12) << '\n';
  } else {
    out << "no violation found\n";
  }
  return v ? 1 : 0;
}

inline int emit_table(const std::vector<TableRow>& rows, double tolerance, Format fmt, std::ostream& out) {
  using detail::num;
  bool ok = true;
  for (const auto& r : rows) ok = ok && table_row_ok(r, tolerance);
  if (fmt == Format::json) {
    detail::write_json(out, rows);
  } else if (fmt == Format::csv) {
    out << "mu,sigma,alpha,x_star,y_star,margin,printed_margin,abs_error,s2_scan_min\n";
    for (const auto& r : rows) {
      const auto& e = r.entry;
      out << num(e.mu) << ',' << num(e.sigma) << ',' << num(e.alpha) << ',' << num(e.x_star) << ','
          << num(e.y_star) << ',' << num(r.margin) << ',' << num(e.printed_margin) << ','
          << num(std::abs(r.margin - e.printed_margin)) << ',' << num(r.s2_scan_min) << '\n';
    }
  } else {
    for (const auto& r : rows) {
      const auto& e = r.entry;
      out << "mu=" << e.mu << " sigma=" << e.sigma << " alpha=" << e.alpha << "  margin " << num(r.margin, 10)
          << " (printed " << num(e.printed_margin, 10) << ")";
      if (!std::isnan(r.s2_scan_min)) out << "  order-2 scan min " << num(r.s2_scan_min, 6);
      out << (table_row_ok(r, tolerance) ? "  ok" : "  MISMATCH") << '\n';
    }
  }
  return ok ? 0 : 1;
}

inline int emit_checks(const std::vector<CheckResult>& checks, Format fmt, std::ostream& out) {
  const bool ok = all_passed(checks);
  if (fmt == Format::json) {
    detail::write_json(out, checks);
  } else if (fmt == Format::csv) {
    out << "check,passed,detail\n";
    for (const auto& c : checks) {
      out << detail::quoted(c.name) << ',' << (c.passed ? "true" : "false") << ',' << detail::quoted(c.detail) << '\n';
    }
  } else {
    for (const auto& c : checks) {
      out << (c.passed ? "PASS  " : "FAIL  ") << c.name;
      if (!c.detail.empty()) out << "  [" << c.detail << ']';
      out << '\n';
    }
  }
  return ok ? 0 : 1;
}

inline int emit_cone(const ConeReport& rep, Format fmt, std::ostream& out) {
  using detail::num;
  if (fmt == Format::json) {
    detail::write_json(out, rep);
  } else if (fmt == Format::csv) {
    out << "sequence,index,x,fx,certified\n";
    for (const auto& r : rep.limsup) {
      out << "limsup," << r.index << ',' << num(r.x) << ',' << num(r.fx) << ',' << (r.certified ? "true" : "false")
          << '\n';
    }
    for (const auto& r : rep.liminf) {
      out << "liminf," << r.index << ',' << num(r.x) << ',' << num(r.fx) << ',' << (r.certified ? "true" : "false")
          << '\n';
    }
  } else {
    std::size_t knees_ok = 0;
    for (const auto& k : rep.knees) knees_ok += k.certified == "TRUE";
    out << "generators: " << rep.n_base << " base, " << rep.n_reserve << " reserve\n"
        << "knees certified: " << knees_ok << "/" << rep.knees.size() << '\n'
        << "subadditivity witnesses: " << rep.pairs - rep.pair_failures << "/" << rep.pairs << " (";
    bool first = true;
    for (const auto& [name, count] : rep.pair_cases) {
      out << (first ? "" : ", ") << name << ' ' << count;
      first = false;
    }
    out << ")\n"
        << "bijection round trips: " << rep.roundtrips - rep.roundtrip_failures << "/" << rep.roundtrips << '\n';
    if (!rep.limsup.empty()) {
      const auto& last = rep.limsup.back();
      out << "limsup: f(p_" << last.index << ") = " << num(last.fx, 12) << " at p = " << num(last.x, 6)
          << (last.certified ? "  certified" : "  NOT certified") << '\n';
    }
    if (!rep.liminf.empty()) {
      const auto& last = rep.liminf.back();
      out << "liminf: f(x_" << last.index << ") = " << num(last.fx, 6)
          << (rep.liminf_below_1e3 ? "  < 1e-3 certified" : "  not below 1e-3") << '\n';
    }
    out << "f(x) < 1 + " << rep.eps << " whenever x < " << rep.eps << ": "
        << (rep.upper_bound ? "holds" : "FAILS") << " on " << rep.eps_samples << " samples\n";
  }
  return rep.passed() ? 0 : 1;
}

// ---------------------------------------------------------------------------

inline int run(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  switch (cfg.subcommand) {
    case Subcommand::certify: return emit_certify(certify_S2(*cfg.params), cfg.format, out);
    case Subcommand::scan: {
      const ScanConfig sc = cfg.scan.value_or(default_s2_scan());
      return emit_scan(scan_gap_min(*cfg.order, *cfg.params, sc), sc.tolerance, cfg.format, out);
    }
    case Subcommand::violate: {
      const ScanConfig sc = cfg.scan.value_or(default_violation_scan(*cfg.params));
      return emit_violation(find_violation(*cfg.order, *cfg.params, sc, cfg.precision_bits), cfg.format, out);
    }
    case Subcommand::table: {
      const double tol = cfg.scan ? cfg.scan->tolerance : default_s2_scan().tolerance;
      return emit_table(reproduce_table(cfg.scan, cfg.precision_bits), tol, cfg.format, out);
    }
    case Subcommand::oracles: {
      auto checks = analytic_invariants(cfg.seed);
      auto more = statement_oracle_checks(cfg.seed);
      checks.insert(checks.end(), more.begin(), more.end());
      return emit_checks(checks, cfg.format, out);
    }
    case Subcommand::cone: return emit_cone(run_cone(cfg.cone, cfg.seed), cfg.format, out);
  }
  return 2;
}

// ---------------------------------------------------------------------------
// Argument parsing

struct HelpRequested {
  std::string text;
};

/// Throws input_error for malformed or out-of-domain arguments and
/// HelpRequested for --help.
inline RunConfig parse(int argc, const char* const* argv) {
  CLI::App app("Certificates, scans and counterexamples for a-subadditive functions", "subadd");
  app.set_config("--config", "", "Flat key=value file; explicit flags take precedence");
  app.require_subcommand(1);

  std::optional<double> mu, sigma, alpha, a, x_lo, x_hi, y_lo, y_hi, tol;
  std::optional<std::size_t> grid, workers;
  std::optional<unsigned> refine;
  std::optional<std::string> format;
  bool no_scan = false;
  RunConfig cfg;

  app.add_option("--mu", mu, "Ring radius mu");
  app.add_option("--sigma", sigma, "Ring width sigma");
  app.add_option("--alpha", alpha, "Ring weight alpha");
  app.add_option("--a", a, "Order a (scan default 2, violate default 3)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--precision-bits", cfg.precision_bits, "Significand bits of the high-precision mode")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for randomised checks")->capture_default_str();
  app.add_option("--x-lo", x_lo, "Scan box");
  app.add_option("--x-hi", x_hi, "Scan box");
  app.add_option("--y-lo", y_lo, "Scan box");
  app.add_option("--y-hi", y_hi, "Scan box");
  app.add_option("--grid", grid, "Grid points per axis");
  app.add_option("--refine", refine, "Refinement rounds");
  app.add_option("--tol", tol, "Scan tolerance");
  app.add_option("--workers", workers, "Scan threads (0 = hardware concurrency)");
  app.add_flag("--no-scan", no_scan, "table: skip the order-2 scans");
  app.add_option("--n-base", cfg.cone.n_base, "cone: BASE generators")->capture_default_str();
  app.add_option("--n-reserve", cfg.cone.n_reserve, "cone: RESERVE generators")->capture_default_str();
  app.add_option("--pairs", cfg.cone.pairs, "cone: random pairs to witness")->capture_default_str();
  app.add_option("--roundtrips", cfg.cone.roundtrips, "cone: bijection round trips")->capture_default_str();
  app.add_option("--liminf-n", cfg.cone.liminf_n, "cone: length of the liminf sequence")->capture_default_str();
  app.add_option("--eps", cfg.cone.eps, "cone: rational eps for the upper-bound check")->capture_default_str();
  app.add_option("--eps-samples", cfg.cone.eps_samples, "cone: samples for the upper-bound check")
      ->capture_default_str();

  const std::pair<Subcommand, const char*> subs[] = {
      {Subcommand::certify, "Check the sufficient conditions with interval arithmetic"},
      {Subcommand::scan, "Grid scan for the minimum of the gap"},
      {Subcommand::violate, "Search for a point where the gap is negative"},
      {Subcommand::table, "Recompute the table of additional triples"},
      {Subcommand::oracles, "Run the randomised property checks"},
      {Subcommand::cone, "Exercise the rational-cone construction"},
  };
  for (const auto& [sub, help] : subs) {
    app.add_subcommand(to_string(sub), help)->fallthrough()->callback([&cfg, s = sub] { cfg.subcommand = s; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw input_error(e.what());
  }

  if (mu || sigma || alpha) {
    if (!(mu && sigma && alpha)) throw input_error("--mu, --sigma and --alpha must be given together");
    cfg.params = Params(*mu, *sigma, *alpha);
  }
  if (a) {
    cfg.order = Order(*a);
  } else if (cfg.subcommand == Subcommand::scan) {
    cfg.order = Order(2.0);
  } else if (cfg.subcommand == Subcommand::violate) {
    cfg.order = Order(3.0);
  }

  if (format) {
    cfg.format = *format == "json" ? Format::json : *format == "csv" ? Format::csv : Format::text;
  } else {
    cfg.format = cfg.subcommand == Subcommand::table ? Format::csv : Format::text;
  }

  const bool touched = x_lo || x_hi || y_lo || y_hi || grid || refine || tol || workers;
  const bool scans = cfg.subcommand == Subcommand::scan || cfg.subcommand == Subcommand::violate ||
                     (cfg.subcommand == Subcommand::table && !no_scan);
  if (scans) {
    ScanConfig sc = (cfg.subcommand == Subcommand::violate && cfg.params) ? default_violation_scan(*cfg.params)
                                                                           : default_s2_scan();
    sc.box.x_lo = x_lo.value_or(sc.box.x_lo);
    sc.box.x_hi = x_hi.value_or(sc.box.x_hi);
    sc.box.y_lo = y_lo.value_or(sc.box.y_lo);
    sc.box.y_hi = y_hi.value_or(sc.box.y_hi);
    sc.grid_n = grid.value_or(sc.grid_n);
    sc.refine_depth = refine.value_or(sc.refine_depth);
    sc.tolerance = tol.value_or(sc.tolerance);
    const std::size_t w = workers.value_or(0);
    sc.workers = w != 0 ? w : std::max(1u, std::thread::hardware_concurrency());
    cfg.scan = sc;
  } else if (touched && cfg.subcommand != Subcommand::table) {
    throw input_error(std::string("scan options do not apply to ") + to_string(cfg.subcommand));
  }
  validate(cfg);
  return cfg;
}

/// Parses, runs and reports. Diagnostics go to `err`, reports to `out`.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse(argc, argv), out);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const construction_error& e) {
    err << "subadd: construction failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "subadd: error: " << e.what() << '\n';
    return 2;
  } catch (...) {
    err << "subadd: error: unknown failure\n";
    return 2;
  }
}

}  // namespace subadd::cli
