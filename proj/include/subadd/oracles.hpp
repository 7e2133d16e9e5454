#pragma once

// Executable checks of the auxiliary statements used along the way: the
// Rolle-type second-difference identity, monotonicity of f on (0, 1],
// symmetrisation on region B, concavity of tau_t, semigroup membership of
// orders, and the rational-indicator example.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "subadd/analytic.hpp"
#include "subadd/certificate.hpp"

namespace subadd {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Rolle-type identity: 2 r(t/2) - r(t) = r(0) - (t^2/4) r''(xi) for some xi in (0, t).

/// Checks the intermediate-value consequence: v = 4 (r(0) - 2 r(t/2) + r(t)) / t^2
/// must lie within the range of r'' sampled on (0, t), widened by 1e-8.
template <class R, class R2>
bool check_rolle_identity(R&& r, R2&& r2, double t, std::size_t samples = 10'000) {
  if (!(t > 0.0)) throw domain_error("check_rolle_identity: t must be > 0");
  const double v = 4.0 * (r(0.0) - 2.0 * r(t / 2.0) + r(t)) / (t * t);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = t * (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    const double s = r2(u);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return lo - 1e-8 <= v && v <= hi + 1e-8;
}

inline bool check_rolle_identity(Fn fn, double t, const Params& p, std::size_t samples = 10'000) {
  return check_rolle_identity([&](double u) { return evaluate(fn, u, p); },
                              [&](double u) { return second_derivative(fn, u, p); }, t, samples);
}

// ---------------------------------------------------------------------------

/// f' > 0 at 10^4 points of (0, 1]. Requires mu >= 1.
inline bool check_monotone_f(const Params& p, std::size_t samples = 10'000) {
  if (p.mu() < 1.0) throw precondition_error("check_monotone_f: requires mu >= 1");
  for (std::size_t i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples);
    if (!(f_prime(t, p) > 0.0)) return false;
  }
  return true;
}

/// A uniformly drawn point of region B = {2|x| + |y| <= 1}.
template <class Rng>
Point sample_region_B(Rng& rng) {
  std::uniform_real_distribution<double> ux(-0.5, 0.5);
  std::uniform_real_distribution<double> u01(-1.0, 1.0);
  const double x = ux(rng);
  const double y = u01(rng) * (1.0 - 2.0 * std::abs(x));
  return {x, y};
}

/// gap_f(x, y) >= gap_f(|x|, |y|) - 1e-12 at n random points of B. Requires mu >= 1.
inline bool check_symmetrization(const Params& p, std::size_t n, std::uint64_t seed = 1) {
  if (p.mu() < 1.0) throw precondition_error("check_symmetrization: requires mu >= 1");
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const Point q = sample_region_B(rng);
    const double lhs = gap<double>(2.0, Fn::f, q.x, q.y, p);
    const double rhs = gap<double>(2.0, Fn::f, std::abs(q.x), std::abs(q.y), p);
    if (lhs < rhs - 1e-12) return false;
  }
  return true;
}

/// tau_t(x) = gap_f(x, t - 2x) on [0, t/2].
inline double tau(const Params& p, double t, double x) { return gap<double>(2.0, Fn::f, x, t - 2.0 * x, p); }

/// Second central differences of tau_t are <= 1e-8 at 10^3 interior points of
/// (0, t/2). Requires both region-B hypotheses to be certified.
inline bool check_tau_concavity(const Params& p, double t, std::size_t points = 1'000) {
  if (!(t > 0.0 && t <= 1.0)) throw precondition_error("check_tau_concavity: t must lie in (0, 1]");
  const auto [b1, b2] = check_region_B(p);
  if (b1.verdict != Tri::True || b2.verdict != Tri::True) {
    throw precondition_error("check_tau_concavity: region-B hypotheses are not certified for these params");
  }
  const double h = (t / 2.0) / static_cast<double>(points + 1);
  for (std::size_t i = 1; i <= points; ++i) {
    const double x = h * static_cast<double>(i);
    const double d2 = tau(p, t, x - h) - 2.0 * tau(p, t, x) + tau(p, t, x + h);
    if (d2 > 1e-8) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Semigroup membership over positive rationals

enum class Membership {
  Member,        // target is a sum of at most max_terms generators
  NotFound,      // not reached within the budget
  ProvenAbsent,  // not reachable with any number of terms
};

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NotFound: return "not-found";
    case Membership::ProvenAbsent: return "proven-absent";
  }
  return "?";
}

namespace detail {

using boost::multiprecision::cpp_int;

// Largest d such that every generator is an integer multiple of d.
inline Rational rational_gcd(const std::vector<Rational>& gens) {
  cpp_int num = 0;
  cpp_int den = 1;
  for (const Rational& g : gens) {
    const cpp_int n = boost::multiprecision::numerator(g);
    const cpp_int d = boost::multiprecision::denominator(g);
    num = boost::multiprecision::gcd(num, n);
    den = boost::multiprecision::lcm(den, d);
  }
  return Rational(num, den);
}

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace detail

/// Breadth-first search over sums of at most `max_terms` generators. Sums
/// beyond the target are pruned, since all generators are positive.
inline Membership semigroup_member(const Rational& target, const std::vector<Rational>& generators,
                                   std::size_t max_terms) {
  if (generators.empty()) throw input_error("semigroup_member: generator set is empty");
  for (const Rational& g : generators) {
    if (g <= 0) throw input_error("semigroup_member: generators must be positive");
  }
  if (target <= 0) throw input_error("semigroup_member: target must be positive");
  if (max_terms == 0) throw input_error("semigroup_member: max_terms must be positive");

  // Every sum is an integer multiple of the rational gcd.
  const Rational d = detail::rational_gcd(generators);
  if (!detail::is_integer(Rational(target / d))) return Membership::ProvenAbsent;

  std::set<Rational> frontier{Rational(0)};
  std::set<Rational> seen;
  for (std::size_t k = 1; k <= max_terms && !frontier.empty(); ++k) {
    std::set<Rational> next;
    for (const Rational& s : frontier) {
      for (const Rational& g : generators) {
        Rational v = s + g;
        if (v == target) return Membership::Member;
        if (v < target && !seen.contains(v)) next.insert(std::move(v));
      }
    }
    seen.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  // Frontier exhausted: no sum stays below the target, so the search was complete.
  if (frontier.empty()) return Membership::ProvenAbsent;
  const Rational smallest = *std::min_element(generators.begin(), generators.end());
  if (Rational(max_terms) * smallest >= target) return Membership::ProvenAbsent;
  return Membership::NotFound;
}

// ---------------------------------------------------------------------------
// f(x) = 1 + 2 * [x rational]

/// Enumerates the rationality patterns of (x, y, a x + y) for integer a and
/// resolves the unforced case (x, y both irrational) against the inequality.
inline bool indicator_example_check(int a) {
  if (a < 1 || a > 3) throw input_error("indicator_example_check: a must be 1, 2 or 3");
  auto f = [](bool rational) { return rational ? 3 : 1; };
  for (bool x_rat : {false, true}) {
    for (bool y_rat : {false, true}) {
      std::vector<bool> sum_cases;
      if (x_rat && y_rat) sum_cases = {true};
      else if (x_rat != y_rat) sum_cases = {false};
      else sum_cases = {false, true};
      for (bool s_rat : sum_cases) {
        if (f(s_rat) > a * f(x_rat) + f(y_rat)) return false;
      }
    }
  }
  return true;
}

}  // namespace subadd
