#pragma once

// Randomised property checks for the analytic core and the statement
// oracles, packaged as named pass/fail records so the CLI and the acceptance
// suite run exactly the same checks.

#include <array>
#include <cmath>
#include <limits>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subadd/analytic.hpp"
#include "subadd/certificate.hpp"
#include "subadd/oracles.hpp"

namespace subadd {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

inline const Params& reference_params() {
  static const Params p(1.2, 0.05, 0.05);
  return p;
}

namespace detail {

// Tracks the worst (smallest) value of lhs - rhs over a sample and where it occurred.
struct WorstCase {
  double slack = std::numeric_limits<double>::infinity();
  double x = 0.0;
  double y = 0.0;
  std::size_t count = 0;

  void add(double s, double px, double py) {
    ++count;
    if (s < slack) {
      slack = s;
      x = px;
      y = py;
    }
  }

  CheckResult result(std::string name, double tol) const {
    std::ostringstream os;
    os.precision(6);
    os << count << " samples; worst slack " << slack << " at (" << x << ", " << y << ")";
    return {std::move(name), slack >= -tol, os.str()};
  }
};

template <class Rng>
Point sample_region_A(Rng& rng) {
  std::uniform_real_distribution<double> mag(0.5, 10.0);
  std::uniform_real_distribution<double> uy(-10.0, 10.0);
  std::bernoulli_distribution neg(0.5);
  const double x = mag(rng);
  return {neg(rng) ? -x : x, uy(rng)};
}

template <class Rng>
Point sample_region_C(Rng& rng) {
  std::uniform_real_distribution<double> ux(-0.5, 0.5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::bernoulli_distribution neg(0.5);
  const double x = ux(rng);
  const double lo = 1.0 - 2.0 * std::abs(x);
  const double y = lo + u01(rng) * (10.0 - lo);
  return {x, neg(rng) ? -y : y};
}

}  // namespace detail

/// Lower bounds on the gap of g, range of the gap of h, symmetry of f,
/// monotonicity of lambda, coverage of the three regions and the gap
/// decomposition of f. Sample sizes: 10^4 (10^5 for region coverage).
inline std::vector<CheckResult> analytic_invariants(std::uint64_t seed = 2024) {
  constexpr std::size_t kPairs = 10'000;
  constexpr double kTol = 1e-12;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-10.0, 10.0);
  std::vector<CheckResult> out;

  {
    detail::WorstCase sub, lam;
    for (std::size_t i = 0; i < kPairs; ++i) {
      const double x = box(rng), y = box(rng);
      sub.add(gap<double>(1.0, Fn::g, x, y, reference_params()), x, y);
      lam.add(gap<double>(2.0, Fn::g, x, y, reference_params()) - eval_lambda(std::abs(x)), x, y);
    }
    out.push_back(sub.result("g is subadditive: gap(1,g) >= 0", kTol));
    out.push_back(lam.result("gap(2,g) >= lambda(|x|)", kTol));
  }
  {
    detail::WorstCase wc;
    for (std::size_t i = 0; i < kPairs; ++i) {
      const Point q = detail::sample_region_A(rng);
      wc.add(gap<double>(2.0, Fn::g, q.x, q.y, reference_params()) - eval_C(), q.x, q.y);
    }
    out.push_back(wc.result("region A: gap(2,g) >= C", kTol));
  }
  {
    detail::WorstCase wc;
    for (std::size_t i = 0; i < kPairs; ++i) {
      const Point q = (i % 2 == 0) ? sample_region_B(rng) : detail::sample_region_C(rng);
      wc.add(gap<double>(2.0, Fn::g, q.x, q.y, reference_params()) - 0.375 * q.x * q.x, q.x, q.y);
    }
    out.push_back(wc.result("regions B,C: gap(2,g) >= (3/8) x^2", kTol));
  }
  {
    detail::WorstCase by_psi, psi_vs_linear;
    for (std::size_t i = 0; i < kPairs; ++i) {
      const Point q = detail::sample_region_C(rng);
      const double psi = eval_psi(std::abs(q.x));
      by_psi.add(gap<double>(2.0, Fn::g, q.x, q.y, reference_params()) - psi, q.x, q.y);
      psi_vs_linear.add(psi - 2.0 * std::abs(q.x), q.x, q.y);
    }
    out.push_back(by_psi.result("region C: gap(2,g) >= psi(|x|)", kTol));
    out.push_back(psi_vs_linear.result("region C: psi(|x|) >= 2|x|", kTol));
  }
  {
    std::uniform_real_distribution<double> mu(0.05, 5.0), sigma(0.01, 1.0), alpha(0.001, 1.0);
    detail::WorstCase low, high;
    for (std::size_t i = 0; i < kPairs; ++i) {
      const Params p(mu(rng), sigma(rng), alpha(rng));
      // Half the samples near the ring, where h varies the most.
      std::uniform_real_distribution<double> near(-2.0 * p.mu(), 2.0 * p.mu());
      const double x = (i % 2 == 0) ? box(rng) : near(rng);
      const double y = (i % 2 == 0) ? box(rng) : near(rng);
      const double d = gap<double>(2.0, Fn::h, x, y, p);
      low.add(d + 1.0, x, y);
      high.add(3.0 - d, x, y);
    }
    out.push_back(low.result("gap(2,h) >= -1 for any params", kTol));
    out.push_back(high.result("gap(2,h) <= 3 for any params", kTol));
  }
  {
    constexpr std::size_t kGrid = 10'000;
    std::size_t bad = 0;
    double prev = eval_lambda(0.0);
    for (std::size_t i = 1; i < kGrid; ++i) {
      const double v = eval_lambda(100.0 * static_cast<double>(i) / static_cast<double>(kGrid - 1));
      if (v < prev) ++bad;
      prev = v;
    }
    out.push_back({"lambda nondecreasing on [0,100]", bad == 0, std::to_string(bad) + " decreases on a 10^4 grid"});
  }
  {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < kPairs; ++i) {
      const double x = box(rng);
      if (eval_f(x, reference_params()) != eval_f(-x, reference_params())) ++bad;
    }
    out.push_back({"f(x) == f(-x) exactly", bad == 0, std::to_string(bad) + " asymmetric samples"});
  }
  {
    constexpr std::size_t kPoints = 100'000;
    std::size_t uncovered = 0;
    for (std::size_t i = 0; i < kPoints; ++i) {
      const RegionFlags r = classify_region(box(rng), box(rng));
      if (!(r.in_A || r.in_B || r.in_C)) ++uncovered;
    }
    out.push_back({"A u B u C covers the plane", uncovered == 0, std::to_string(uncovered) + " of 10^5 uncovered"});
  }
  {
    const Params& p = reference_params();
    const double h0 = eval_h(0.0, p);
    detail::WorstCase wc;
    for (std::size_t i = 0; i < kPairs; ++i) {
      const double x = box(rng), y = box(rng);
      const double lhs = gap<double>(2.0, Fn::f, x, y, p);
      const double rhs = gap<double>(2.0, Fn::g, x, y, p) + p.alpha() * (gap<double>(2.0, Fn::h, x, y, p) - 2.0 * h0);
      wc.add(-std::abs(lhs - rhs), x, y);
    }
    out.push_back(wc.result("gap(2,f) = gap(2,g) + alpha (gap(2,h) - 2 h(0))", kTol));
  }
  return out;
}

/// Random parameter triples near the reference one that pass certify_S2.
template <class Rng>
Params random_certified_params(Rng& rng) {
  std::uniform_real_distribution<double> jitter(0.8, 1.2);
  const Params& ref = reference_params();
  for (;;) {
    Params p(ref.mu() * jitter(rng), ref.sigma() * jitter(rng), ref.alpha() * jitter(rng));
    if (certify_S2(p).verdict == CertVerdict::Certified) return p;
  }
}

inline std::vector<CheckResult> statement_oracle_checks(std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  const Params& ref = reference_params();
  std::vector<CheckResult> out;
  auto record = [&](std::string name, bool passed, std::string detail = {}) {
    out.push_back({std::move(name), passed, std::move(detail)});
  };

  // Rolle-type identity
  {
    std::size_t failures = 0;
    std::uniform_int_distribution<int> which(0, 2);
    std::uniform_real_distribution<double> ut(0.01, 2.0);
    for (int i = 0; i < 100; ++i) {
      const Params p = random_certified_params(rng);
      const Fn fn = std::array{Fn::f, Fn::g, Fn::h}[which(rng)];
      if (!check_rolle_identity(fn, ut(rng), p)) ++failures;
    }
    record("Rolle identity: 100 random (fn, t, certified params)", failures == 0,
           std::to_string(failures) + " failures");
    record("Rolle identity: h, t=1", check_rolle_identity(Fn::h, 1.0, ref));
    const double v = 4.0 * (eval_g(0.0) - 2.0 * eval_g(0.25) + eval_g(0.5)) / 0.25;
    record("Rolle identity: g, t=0.5, value in [-1, -4/9]",
           check_rolle_identity(Fn::g, 0.5, ref) && v >= -1.0 && v <= -4.0 / 9.0);
    const double quad = 4.0 * (0.0 - 2.0 * 0.25 + 1.0) / 1.0;
    record("Rolle identity: exact for r(u) = u^2",
           quad == 2.0 && check_rolle_identity([](double u) { return u * u; }, [](double) { return 2.0; }, 1.0));
  }

  // Monotonicity of f on (0, 1]
  record("f increasing on (0,1]: reference params", check_monotone_f(ref));
  record("f increasing on (0,1]: (1.0, 0.3, 1.0)", check_monotone_f(Params(1.0, 0.3, 1.0)));
  {
    bool refused = false;
    try {
      (void)check_monotone_f(Params(0.9, 0.05, 0.05));
    } catch (const precondition_error&) {
      refused = true;
    }
    record("f monotonicity check refuses mu < 1", refused);
  }

  record("symmetrisation on B: gap_f(x,y) >= gap_f(|x|,|y|), 10^4 points", check_symmetrization(ref, 10'000, seed));

  record("tau_t concave: t = 1", check_tau_concavity(ref, 1.0));
  record("tau_t concave: t = 0.2", check_tau_concavity(ref, 0.2));
  record("tau_t(0) = 0", tau(ref, 1.0, 0.0) == 0.0 && tau(ref, 0.2, 0.0) == 0.0);

  // Semigroup membership
  record("3 in <1,2> within 5 terms", semigroup_member(3, {1, 2}, 5) == Membership::Member);
  record("5 not in <2,4>", semigroup_member(5, {2, 4}, 10) != Membership::Member);
  record("2 in <1> (order 1 implies order 2)", semigroup_member(2, {1}, 5) == Membership::Member);
  {
    std::size_t violations = 0;
    std::uniform_int_distribution<int> num(1, 12), den(1, 4), count(1, 3);
    for (int i = 0; i < 50; ++i) {
      std::vector<Rational> gens;
      for (int k = count(rng); k > 0; --k) gens.emplace_back(num(rng), den(rng));
      const Rational target(num(rng) * 2, den(rng));
      bool found = false;
      for (std::size_t budget = 1; budget <= 8; ++budget) {
        const bool member = semigroup_member(target, gens, budget) == Membership::Member;
        if (found && !member) ++violations;
        found = found || member;
      }
    }
    record("semigroup membership monotone in max_terms", violations == 0, std::to_string(violations) + " regressions");
  }

  // 1 + 2 * [x rational]
  record("indicator example is 2-subadditive", indicator_example_check(2));
  record("indicator example is not 1-subadditive", !indicator_example_check(1));
  record("indicator example is 3-subadditive", indicator_example_check(3));
  return out;
}

}  // namespace subadd
