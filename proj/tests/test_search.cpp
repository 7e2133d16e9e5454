#include <catch_amalgamated.hpp>

#include <cmath>

#include "subadd/search.hpp"

using namespace subadd;

namespace {
const Params ref(1.2, 0.05, 0.05);
}

TEST_CASE("verify_point at the order-3 witness", "[search]") {
  const double m = verify_point(Order(3.0), ref, 0.016, 1.137);
  CHECK(m > 0.0100);
  CHECK(m < 0.0102);
  CHECK(std::abs(m - 0.010068582956320667) < 1e-15);
  CHECK(std::abs(verify_point(Order(3.0), ref, 0.016, 1.137, 512) - m) < 1e-16);
}

TEST_CASE("scan config validation", "[search]") {
  ScanConfig c = default_s2_scan();
  c.box.x_hi = c.box.x_lo;
  CHECK_THROWS_AS(scan_gap_min(Order(2.0), ref, c), input_error);
  c = default_s2_scan();
  c.grid_n = 1;
  CHECK_THROWS_AS(scan_gap_min(Order(2.0), ref, c), input_error);
  c = default_s2_scan();
  c.tolerance = -1.0;
  CHECK_THROWS_AS(scan_gap_min(Order(2.0), ref, c), input_error);
}

TEST_CASE("g alone is 2-subadditive on the grid", "[search]") {
  // alpha tiny: f is g up to 1e-12.
  const ScanReport r = scan_gap_min(Order(2.0), Params(1.2, 0.05, 1e-12), {{-4, 4, -4, 4}, 201, 2, 1e-9, 1});
  CHECK(r.min_gap >= -1e-9);
  CHECK(r.evaluations == 3u * 201u * 201u);
}

TEST_CASE("scan result does not depend on the number of workers", "[search]") {
  const ScanConfig base{{-2, 2, -2, 2}, 301, 2, 1e-9, 1};
  const ScanReport one = scan_gap_min(Order(2.0), ref, base);
  for (std::size_t w : {2u, 3u, 7u}) {
    ScanConfig c = base;
    c.workers = w;
    CHECK(scan_gap_min(Order(2.0), ref, c) == one);
  }
}

TEST_CASE("scan minimum is reflection symmetric", "[search]") {
  // gap(-x, -y) = gap(x, y) since f is even, so mirrored boxes give mirrored minima.
  const ScanConfig c{{0.0, 0.1, 1.0, 1.4}, 201, 0, 1e-9, 1};
  const ScanConfig m{{-0.1, 0.0, -1.4, -1.0}, 201, 0, 1e-9, 1};
  const ScanReport a = scan_gap_min(Order(2.0), ref, c);
  const ScanReport b = scan_gap_min(Order(2.0), ref, m);
  CHECK(a.min_gap == b.min_gap);
  CHECK(a.argmin.x == -b.argmin.x);
  CHECK(a.argmin.y == -b.argmin.y);
}

TEST_CASE("grid nodes hit both endpoints exactly", "[search]") {
  CHECK(detail::grid_node(-8.0, 8.0, 0, 801) == -8.0);
  CHECK(detail::grid_node(-8.0, 8.0, 800, 801) == 8.0);
  CHECK(detail::grid_node(-8.0, 8.0, 400, 801) == 0.0);
  for (std::size_t i = 0; i < 801; ++i) {
    CHECK(detail::grid_node(-8.0, 8.0, i, 801) == -detail::grid_node(-8.0, 8.0, 800 - i, 801));
  }
}

TEST_CASE("golden section finds a parabola's minimum", "[search]") {
  const double x = detail::golden_min([](double t) { return (t - 0.3) * (t - 0.3); }, 0.0, 1.0, 200);
  CHECK(std::abs(x - 0.3) < 1e-8);
  // Minimum on the boundary.
  CHECK(detail::golden_min([](double t) { return t; }, 0.0, 1.0, 200) == 0.0);
}

TEST_CASE("order-3 violation near the published witness", "[search]") {
  const auto v = find_violation(Order(3.0), ref, default_violation_scan(ref));
  REQUIRE(v.has_value());
  CHECK(std::abs(v->point.x - 0.016) < 0.002);
  CHECK(std::abs(v->point.y - 1.137) < 0.002);
  CHECK(v->margin > 0.01);
  CHECK(v->margin >= verify_point(Order(3.0), ref, 0.016, 1.137));
}

TEST_CASE("order-1 violation: f is not subadditive", "[search]") {
  const auto v = find_violation(Order(1.0), ref, default_violation_scan(ref));
  REQUIRE(v.has_value());
  CHECK(v->margin > 1e-4);
}

// Regression for the counterexample to order-2 subadditivity of the certified
// triple (mpmath: gap = -0.0102684362743915 at (0.025, 1.136)).
TEST_CASE("order-2 violation for the certified triple", "[search]") {
  const auto v = find_violation(Order(2.0), ref, default_violation_scan(ref));
  REQUIRE(v.has_value());
  CHECK(v->margin > 0.0102);
  CHECK(std::abs(v->point.x - 0.025) < 0.003);
  CHECK(std::abs(v->point.y - 1.136) < 0.003);
  CHECK(classify_region(v->point.x, v->point.y).in_C);

  const ScanReport s = scan_gap_min(Order(2.0), ref, {{-2, 2, -2, 2}, 401, 3, 1e-9, 1});
  CHECK(s.min_gap < -0.009);
}

TEST_CASE("no violation reported when the gap is nonnegative", "[search]") {
  const auto v = find_violation(Order(2.0), Params(1.2, 0.05, 1e-12), {{0.0, 1.0, 0.0, 2.0}, 101, 1, 1e-9, 1});
  CHECK_FALSE(v.has_value());
}

TEST_CASE("table rows are recomputed in printed order", "[search]") {
  const auto rows = reproduce_table(std::nullopt);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].entry.mu == 1.5);
  CHECK(rows[4].entry.mu == 5.0);
  for (const auto& r : rows) CHECK(std::isnan(r.s2_scan_min));
  // mpmath values of f(3x*+y*) - 3f(x*) - f(y*) at the printed points.
  CHECK(std::abs(rows[0].margin - 0.0278528849984) < 1e-12);
  CHECK(std::abs(rows[1].margin + 0.00121813359974) < 1e-12);
  CHECK(std::abs(rows[2].margin + 0.00194167107214) < 1e-12);
  CHECK(std::abs(rows[3].margin + 0.00243169513228) < 1e-12);
  CHECK(std::abs(rows[4].margin + 0.0131294070275) < 1e-12);
}
