#pragma once

// Deterministic numerical exploration of the gap functional of f.
//
// scan_gap_min evaluates the gap on a regular grid, then zooms in around the
// current minimiser `refine_depth` times (half-widths shrink by 10 each round,
// same grid resolution). Rows of the grid are split among worker threads and
// the per-worker minima are merged with a (gap, x, y) lexicographic min, so
// the report does not depend on the number of workers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "subadd/analytic.hpp"
#include "subadd/real.hpp"

namespace subadd {

struct Box {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  friend bool operator==(const Box&, const Box&) = default;
};

struct ScanConfig {
  Box box;
  std::size_t grid_n = 801;
  unsigned refine_depth = 3;
  double tolerance = 1e-9;
  std::size_t workers = 1;
  friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

struct ScanReport {
  Order order;
  Params params;
  double min_gap = 0.0;
  Point argmin;
  std::uint64_t evaluations = 0;
  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

struct Violation {
  Order order;
  Params params;
  Point point;
  double margin = 0.0;  // -gap, evaluated in high precision
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// [-8, 8]^2: wide enough for every ring radius up to mu = 5.
inline Box default_s2_box() { return {-8.0, 8.0, -8.0, 8.0}; }

/// Small x and y around the ring radius, where a x + y lands near mu.
inline Box default_violation_box(const Params& p) {
  return {0.0, 0.1, p.mu() - 10.0 * p.sigma(), p.mu() + 10.0 * p.sigma()};
}

inline ScanConfig default_s2_scan() { return {default_s2_box(), 801, 3, 1e-9, 1}; }

inline ScanConfig default_violation_scan(const Params& p) {
  return {default_violation_box(p), 401, 3, 1e-9, 1};
}

inline void validate(const ScanConfig& cfg) {
  const Box& b = cfg.box;
  for (double v : {b.x_lo, b.x_hi, b.y_lo, b.y_hi, cfg.tolerance}) {
    if (!std::isfinite(v)) throw input_error("scan config: non-finite value");
  }
  if (!(b.x_lo < b.x_hi) || !(b.y_lo < b.y_hi)) throw input_error("scan config: box must satisfy lo < hi");
  if (cfg.grid_n < 2) throw input_error("scan config: grid_n must be >= 2");
  if (cfg.tolerance < 0.0) throw input_error("scan config: tolerance must be >= 0");
}

/// -gap(a, f, x, y) in `Real` precision; positive means a violation.
template <class Real = hp_real>
double verify_point(Order a, const Params& p, double x, double y) {
  const Real g = gap<Real>(Real(a.value()), Fn::f, Real(x), Real(y), p);
  return static_cast<double>(Real(-g));
}

inline double verify_point(Order a, const Params& p, double x, double y, unsigned precision_bits) {
  return with_precision(precision_bits, [&](auto tag) {
    return verify_point<decltype(tag)>(a, p, x, y);
  });
}

namespace detail {

struct Candidate {
  double gap = std::numeric_limits<double>::infinity();
  double x = 0.0;
  double y = 0.0;
};

// The reduction monoid: smaller gap wins, ties go to the lexicographically
// smallest point. Associative and commutative, so any partition gives the
// same result.
inline bool better(const Candidate& a, const Candidate& b) {
  if (a.gap != b.gap) return a.gap < b.gap;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

inline const Candidate& best_of(const Candidate& a, const Candidate& b) { return better(b, a) ? b : a; }

// Endpoint-symmetric grid coordinate: node i of [lo, hi] is the exact negation
// of node n-1-i of [-hi, -lo].
inline double grid_node(double lo, double hi, std::size_t i, std::size_t n) {
  const double k = static_cast<double>(n - 1);
  const double v = (lo * (k - static_cast<double>(i)) + hi * static_cast<double>(i)) / k;
  return std::clamp(v, lo, hi);
}

inline Candidate scan_rows(double a, const Params& p, const Box& b, std::size_t n, std::size_t row_begin,
                           std::size_t row_end) {
  Candidate best;
  for (std::size_t i = row_begin; i < row_end; ++i) {
    const double x = grid_node(b.x_lo, b.x_hi, i, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = grid_node(b.y_lo, b.y_hi, j, n);
      const Candidate c{gap<double>(a, Fn::f, x, y, p), x, y};
      if (better(c, best)) best = c;
    }
  }
  return best;
}

inline Candidate scan_grid(double a, const Params& p, const Box& b, std::size_t n, std::size_t workers) {
  workers = std::clamp<std::size_t>(workers, 1, n);
  if (workers == 1) return scan_rows(a, p, b, n, 0, n);
  std::vector<Candidate> partial(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] { partial[w] = scan_rows(a, p, b, n, begin, end); });
    }
  }
  Candidate best;
  for (const auto& c : partial) best = best_of(best, c);
  return best;
}

// Golden-section minimisation of `fn` on [lo, hi]; returns the best abscissa
// seen, including the bracket ends.
template <class F>
double golden_min(F&& fn, double lo, double hi, int iterations) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int it = 0; it < iterations && c < d; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  std::array<double, 4> xs{lo, hi, c, d};
  double best_x = xs[0];
  double best_f = fn(best_x);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = fn(xs[i]);
    if (v < best_f) {
      best_f = v;
      best_x = xs[i];
    }
  }
  return best_x;
}

}  // namespace detail

inline ScanReport scan_gap_min(Order a, const Params& p, const ScanConfig& cfg) {
  validate(cfg);
  const std::size_t n = cfg.grid_n;
  const Box& outer = cfg.box;
  detail::Candidate best = detail::scan_grid(a.value(), p, outer, n, cfg.workers);
  std::uint64_t evaluations = static_cast<std::uint64_t>(n) * n;

  double hx = (outer.x_hi - outer.x_lo) / 2.0;
  double hy = (outer.y_hi - outer.y_lo) / 2.0;
  for (unsigned round = 0; round < cfg.refine_depth; ++round) {
    hx /= 10.0;
    hy /= 10.0;
    const Box local{std::max(outer.x_lo, best.x - hx), std::min(outer.x_hi, best.x + hx),
                    std::max(outer.y_lo, best.y - hy), std::min(outer.y_hi, best.y + hy)};
    if (!(local.x_lo < local.x_hi) || !(local.y_lo < local.y_hi)) break;
    best = detail::best_of(best, detail::scan_grid(a.value(), p, local, n, cfg.workers));
    evaluations += static_cast<std::uint64_t>(n) * n;
  }
  return {a, p, best.gap, {best.x, best.y}, evaluations};
}

/// Scan, then polish the scan minimiser with coordinate-wise golden-section
/// search (5 sweeps, at most 200 iterations per coordinate) and certify the
/// margin in high precision. Empty when no gap below -tolerance is found.
inline std::optional<Violation> find_violation(Order a, const Params& p, const ScanConfig& cfg,
                                               unsigned precision_bits = 128) {
  const ScanReport scan = scan_gap_min(a, p, cfg);
  if (!(scan.min_gap < -cfg.tolerance)) return std::nullopt;

  const Box& box = cfg.box;
  const double cells = static_cast<double>(cfg.grid_n - 1);
  const double shrink = std::pow(10.0, static_cast<double>(cfg.refine_depth));
  const double rx = 2.0 * (box.x_hi - box.x_lo) / cells / shrink;
  const double ry = 2.0 * (box.y_hi - box.y_lo) / cells / shrink;

  double x = scan.argmin.x;
  double y = scan.argmin.y;
  double best = scan.min_gap;
  for (int sweep = 0; sweep < 5; ++sweep) {
    const double nx = detail::golden_min([&](double t) { return gap<double>(a.value(), Fn::f, t, y, p); },
                                         std::max(box.x_lo, x - rx), std::min(box.x_hi, x + rx), 200);
    if (const double v = gap<double>(a.value(), Fn::f, nx, y, p); v < best) {
      best = v;
      x = nx;
    }
    const double ny = detail::golden_min([&](double t) { return gap<double>(a.value(), Fn::f, x, t, p); },
                                         std::max(box.y_lo, y - ry), std::min(box.y_hi, y + ry), 200);
    if (const double v = gap<double>(a.value(), Fn::f, x, ny, p); v < best) {
      best = v;
      y = ny;
    }
  }

  const double margin = verify_point(a, p, x, y, precision_bits);
  if (!(margin > 0.0)) return std::nullopt;
  return Violation{a, p, {x, y}, margin};
}

// ---------------------------------------------------------------------------
// Table of additional triples (mu, sigma, alpha, x*, y*, printed margin)

struct TableEntry {
  double mu;
  double sigma;
  double alpha;
  double x_star;
  double y_star;
  double printed_margin;
};

inline constexpr std::array<TableEntry, 5> kTripleTable{{
    {1.5, 0.05, 0.117783036, 0.00675, 1.45367, 0.001664770},
    {2.0, 0.10, 0.117783036, 0.01050, 1.95491, 0.000326430},
    {2.5, 0.10, 0.117783036, 0.00900, 2.45647, 0.000183238},
    {3.0, 0.10, 0.117783036, 0.00750, 2.95886, 0.000105165},
    {5.0, 0.15, 0.117783036, 0.00750, 4.96456, 0.000053255},
}};

struct TableRow {
  TableEntry entry;
  double margin = 0.0;       // f(3x*+y*) - 3f(x*) - f(y*), high precision
  double s2_scan_min = 0.0;  // min of the order-2 gap over the scan grid
  friend bool operator==(const TableRow& a, const TableRow& b) {
    return a.entry.mu == b.entry.mu && a.entry.sigma == b.entry.sigma && a.entry.alpha == b.entry.alpha &&
           a.entry.x_star == b.entry.x_star && a.entry.y_star == b.entry.y_star &&
           a.entry.printed_margin == b.entry.printed_margin && a.margin == b.margin &&
           (a.s2_scan_min == b.s2_scan_min || (std::isnan(a.s2_scan_min) && std::isnan(b.s2_scan_min)));
  }
};

/// Recomputes every table row in printed order. Pass `scan = std::nullopt` to
/// skip the order-2 scan (s2_scan_min is then NaN).
inline std::vector<TableRow> reproduce_table(const std::optional<ScanConfig>& scan = default_s2_scan(),
                                             unsigned precision_bits = 128) {
  std::vector<TableRow> rows;
  rows.reserve(kTripleTable.size());
  for (const TableEntry& e : kTripleTable) {
    const Params p(e.mu, e.sigma, e.alpha);
    TableRow row{e, verify_point(Order(3.0), p, e.x_star, e.y_star, precision_bits),
                 std::numeric_limits<double>::quiet_NaN()};
    if (scan) row.s2_scan_min = scan_gap_min(Order(2.0), p, *scan).min_gap;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace subadd
