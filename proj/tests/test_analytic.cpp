#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "subadd/analytic.hpp"
#include "subadd/real.hpp"

using namespace subadd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
// Expected values below were computed independently with mpmath at 300 bits.
const Params ref(1.2, 0.05, 0.05);
}  // namespace

TEST_CASE("params and order reject bad input", "[analytic]") {
  CHECK_THROWS_AS(Params(0.0, 0.05, 0.05), input_error);
  CHECK_THROWS_AS(Params(1.2, -0.05, 0.05), input_error);
  CHECK_THROWS_AS(Params(1.2, 0.05, NAN), input_error);
  CHECK_THROWS_AS(Params(INFINITY, 0.05, 0.05), input_error);
  CHECK_THROWS_AS(Order(0.0), input_error);
  CHECK_THROWS_AS(Order(-1.0), input_error);
  CHECK(Order(2.5).value() == 2.5);
  CHECK(parse_fn("h_shifted") == Fn::h_shifted);
  CHECK_THROWS_AS(parse_fn("k"), input_error);
}

TEST_CASE("g, h and f at reference points", "[analytic]") {
  CHECK(eval_g(0.0) == 0.0);
  CHECK_THAT(eval_g(-1.0), WithinRel(1.0 + std::log(2.0), 1e-15));
  CHECK_THAT(eval_h(1.185, ref), WithinRel(0.91393118527122818, 1e-13));
  CHECK_THAT(eval_f(1.137, ref), WithinRel(1.9066237573859238, 1e-13));
  CHECK_THAT(eval_f(0.016, ref), WithinRel(0.031873349156290149, 1e-13));
  CHECK_THAT(eval_f(-2.5, ref), WithinRel(3.7527629684953680, 1e-13));
  CHECK(evaluate(Fn::h_shifted, 0.0, ref) == 0.0);
}

TEST_CASE("h(0) is tiny but representable for the reference triple", "[analytic]") {
  // exp(-576) is a normal double.
  CHECK_THAT(eval_h(0.0, ref), WithinRel(7.0206677985047347e-251, 1e-12));
  CHECK(eval_f(0.0, ref) == 0.0);
}

TEST_CASE("h(0) underflows for (5.0, 0.15) without disturbing f(0) = 0", "[analytic]") {
  const Params p(5.0, 0.15, 0.117783036);
  CHECK(eval_h(0.0, p) == 0.0);
  CHECK(eval_f(0.0, p) == 0.0);
  // The high-precision type has the exponent range to see it.
  CHECK_THAT(static_cast<double>(eval_h<hp_real>(hp_real(0), p) * hp_real("1e483")), WithinRel(2.8221212119684452, 1e-12));
}

TEST_CASE("f is even and vanishes at 0 for random params", "[analytic]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 4.0), x(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Params p(u(rng), u(rng), u(rng));
    const double t = x(rng);
    CHECK(eval_f(t, p) == eval_f(-t, p));
    CHECK(eval_f(0.0, p) == 0.0);
  }
}

TEST_CASE("gap at the order-3 witness", "[analytic]") {
  CHECK_THAT(gap<double>(3.0, Fn::f, 0.016, 1.137, ref), WithinAbs(-0.010068582956320667, 1e-12));
  CHECK_THAT(gap(Order(3.0), Fn::f, 0.016, 1.137, ref), WithinAbs(-0.010068582956320667, 1e-12));
  const hp_real hp = gap<hp_real>(hp_real(3), Fn::f, hp_real(0.016), hp_real(1.137), ref);
  CHECK_THAT(static_cast<double>(hp), WithinAbs(-0.010068582956320667, 1e-15));
}

TEST_CASE("gap of g", "[analytic]") {
  CHECK_THAT(gap<double>(2.0, Fn::g, 0.3, 0.7, ref), WithinRel(0.22244765706204849, 1e-13));
  CHECK(gap<double>(2.0, Fn::g, 0.0, 0.0, ref) == 0.0);
}

TEST_CASE("gap decomposes into g and shifted h parts", "[analytic]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng), y = u(rng);
    const double lhs = gap<double>(2.0, Fn::f, x, y, ref);
    const double rhs = gap<double>(2.0, Fn::g, x, y, ref) + ref.alpha() * gap<double>(2.0, Fn::h_shifted, x, y, ref);
    CHECK_THAT(lhs, WithinAbs(rhs, 1e-12));
  }
}

TEST_CASE("helper functions", "[analytic]") {
  CHECK_THAT(eval_phi(4.0), WithinRel(6.9771808325940651e-6, 1e-13));
  CHECK(eval_phi(0.0) == -2.0);
  CHECK_THAT(eval_C(), WithinRel(0.11778303565638345, 1e-15));
  CHECK_THAT(eval_lambda(1.0), WithinRel(0.28768207245178093, 1e-14));
  CHECK(eval_lambda(0.0) == 0.0);
  CHECK_THAT(eval_psi(0.25), WithinRel(0.15860503017663858, 1e-14));
  CHECK(eval_psi(0.0) == 0.0);
  CHECK_THROWS_AS(eval_phi(-0.1), domain_error);
  CHECK_THROWS_AS(eval_lambda(-0.1), domain_error);
  CHECK_THROWS_AS(eval_psi(1.0), domain_error);
  CHECK_THROWS_AS(eval_psi(-0.5), domain_error);
}

TEST_CASE("lambda keeps full precision for tiny arguments", "[analytic]") {
  // lambda(z) ~ z^2 near 0.
  CHECK_THAT(eval_lambda(1e-8), WithinRel(1e-16, 1e-6));
}

TEST_CASE("region classification is closed on the boundaries", "[analytic]") {
  CHECK(classify_region(0.5, 0.0) == RegionFlags{true, true, true});
  CHECK(classify_region(-0.5, 3.0) == RegionFlags{true, false, true});
  CHECK(classify_region(0.1, 0.2) == RegionFlags{false, true, false});
  CHECK(classify_region(0.1, -0.8) == RegionFlags{false, true, true});
  CHECK(classify_region(0.1, 0.9) == RegionFlags{false, false, true});
  CHECK(classify_region(2.0, 0.0) == RegionFlags{true, false, false});
}

TEST_CASE("derivatives", "[analytic]") {
  CHECK_THAT(f_prime(1.0, ref), WithinRel(1.5000009002813978, 1e-13));
  CHECK_THROWS_AS(f_prime(0.0, ref), domain_error);
  CHECK_THAT(h_second(1.0, ref), WithinRel(0.0027908723330376260, 1e-12));
  CHECK(h_prime(-1.0, ref) == -h_prime(1.0, ref));
  CHECK_THROWS_AS(h_prime(0.0, ref), domain_error);
  CHECK_THROWS_AS(second_derivative(Fn::f, 0.0, ref), domain_error);
  CHECK_THAT(second_derivative(Fn::g, 1.0, ref), WithinRel(-0.25, 1e-15));

  // Central differences agree with the closed forms away from 0.
  for (double x : {0.3, 1.1, 1.2, 1.23, 2.0}) {
    const double d = 1e-5;
    const double fd = (eval_f(x + d, ref) - 2.0 * eval_f(x, ref) + eval_f(x - d, ref)) / (d * d);
    CHECK_THAT(second_derivative(Fn::f, x, ref), WithinAbs(fd, 1e-3 * (1.0 + std::abs(fd))));
    const double fd1 = (eval_f(x + d, ref) - eval_f(x - d, ref)) / (2.0 * d);
    CHECK_THAT(f_prime(x, ref), WithinAbs(fd1, 1e-6 * (1.0 + std::abs(fd1))));
  }
}

TEST_CASE("double and high precision agree", "[analytic]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    const double hp = static_cast<double>(eval_f<hp_real>(hp_real(x), ref));
    CHECK_THAT(eval_f(x, ref), WithinAbs(hp, 1e-14 * (1.0 + std::abs(hp))));
  }
}

TEST_CASE("precision dispatch", "[analytic]") {
  CHECK(with_precision(128, [](auto t) { return std::numeric_limits<decltype(t)>::digits; }) == 128);
  CHECK(with_precision(200, [](auto t) { return std::numeric_limits<decltype(t)>::digits; }) == 256);
  CHECK(with_precision(512, [](auto t) { return std::numeric_limits<decltype(t)>::digits; }) == 512);
  CHECK_THROWS_AS(with_precision(0, [](auto) { return 0; }), input_error);
  CHECK_THROWS_AS(with_precision(1024, [](auto) { return 0; }), input_error);
}
