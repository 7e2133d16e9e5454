#include <catch_amalgamated.hpp>

#include <cmath>

#include "subadd/oracles.hpp"
#include "subadd/suite.hpp"

using namespace subadd;

namespace {
const Params ref(1.2, 0.05, 0.05);
}

TEST_CASE("Rolle identity", "[oracles]") {
  CHECK(check_rolle_identity(Fn::h, 1.0, ref));
  CHECK(check_rolle_identity(Fn::g, 0.5, ref));
  CHECK(check_rolle_identity(Fn::f, 2.0, ref));
  CHECK_THROWS_AS(check_rolle_identity(Fn::g, 0.0, ref), domain_error);
  // A function whose second difference leaves the range of the supplied r''.
  CHECK_FALSE(check_rolle_identity([](double u) { return u * u * u; }, [](double) { return 0.0; }, 1.0));
}

TEST_CASE("f is increasing on (0, 1]", "[oracles]") {
  CHECK(check_monotone_f(ref));
  CHECK_THROWS_AS(check_monotone_f(Params(0.5, 0.05, 0.05)), precondition_error);
}

TEST_CASE("symmetrisation on region B", "[oracles]") {
  CHECK(check_symmetrization(ref, 10'000));
  CHECK_THROWS_AS(check_symmetrization(Params(0.5, 0.05, 0.05), 10), precondition_error);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Point q = sample_region_B(rng);
    CHECK(classify_region(q.x, q.y).in_B);
  }
}

TEST_CASE("tau is concave and starts at 0", "[oracles]") {
  CHECK(tau(ref, 0.7, 0.0) == 0.0);
  CHECK(check_tau_concavity(ref, 1.0));
  CHECK(check_tau_concavity(ref, 0.5));
  CHECK_THROWS_AS(check_tau_concavity(ref, 1.5), precondition_error);
  // mu too small for the region-B hypotheses.
  CHECK_THROWS_AS(check_tau_concavity(Params(1.02, 0.05, 0.05), 1.0), precondition_error);
}

TEST_CASE("semigroup membership", "[oracles]") {
  CHECK(semigroup_member(3, {1, 2}, 5) == Membership::Member);
  CHECK(semigroup_member(5, {2, 4}, 10) == Membership::ProvenAbsent);
  CHECK(semigroup_member(Rational(7, 2), {Rational(1, 2)}, 7) == Membership::Member);
  CHECK(semigroup_member(Rational(7, 2), {Rational(1, 2)}, 6) == Membership::NotFound);
  CHECK(semigroup_member(100, {1}, 3) == Membership::NotFound);
  CHECK(semigroup_member(Rational(1, 3), {1, 2}, 3) == Membership::ProvenAbsent);
  CHECK_THROWS_AS(semigroup_member(1, {}, 3), input_error);
  CHECK_THROWS_AS(semigroup_member(1, {Rational(-1)}, 3), input_error);
  CHECK_THROWS_AS(semigroup_member(0, {1}, 3), input_error);
}

TEST_CASE("rational indicator example", "[oracles]") {
  CHECK_FALSE(indicator_example_check(1));
  CHECK(indicator_example_check(2));
  CHECK(indicator_example_check(3));
  CHECK_THROWS_AS(indicator_example_check(4), input_error);
}

TEST_CASE("analytic invariant suite", "[oracles]") {
  const auto checks = analytic_invariants();
  REQUIRE(checks.size() == 12);
  for (const auto& c : checks) {
    INFO(c.name << ": " << c.detail);
    if (c.name == "region C: psi(|x|) >= 2|x|") {
      // psi(z) = log((1+z)^2 (1-z)) grows like z, so this bound is false.
      CHECK_FALSE(c.passed);
    } else {
      CHECK(c.passed);
    }
  }
}

TEST_CASE("statement oracle suite", "[oracles]") {
  for (const auto& c : statement_oracle_checks()) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("random certified params stay near the reference triple", "[oracles]") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const Params p = random_certified_params(rng);
    CHECK(certify_S2(p).verdict == CertVerdict::Certified);
    CHECK(std::abs(p.mu() / 1.2 - 1.0) <= 0.2);
  }
}
