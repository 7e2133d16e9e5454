#pragma once

// Interval checks of the region-wise sufficient conditions for f to be
// 2-subadditive. Each condition is stated as lhs <= rhs and decided with
// certainly_le, so a parameter set sitting exactly on a bound comes out
// UNKNOWN rather than TRUE.
//
//   region A (|x| >= 1/2):              alpha <= C / (1 + 2 exp(-(mu/sigma)^2))
//   region B (2|x| + |y| <= 1):         1 + sigma sqrt(3/2) <= mu
//                                       alpha <= 17 sigma^2 / (54 phi((mu - 1)/sigma))
//   region C (|x| <= 1/2, 2|x|+|y| >= 1): 1/2 <= mu
//                                       alpha <= sigma sqrt(e/2)
//
// CERTIFIED only says that every hypothesis above holds. The region-C bound
// in particular is not sufficient on its own: see README ("Known issues").

#include <string>
#include <utility>
#include <vector>

#include "subadd/analytic.hpp"
#include "subadd/interval.hpp"

namespace subadd {

struct ConditionResult {
  std::string name;
  Interval lhs;
  Interval rhs;
  Tri verdict = Tri::Unknown;
  friend bool operator==(const ConditionResult&, const ConditionResult&) = default;
};

enum class CertVerdict { Certified, NotCertified, Unknown };

inline const char* to_string(CertVerdict v) {
  switch (v) {
    case CertVerdict::Certified: return "CERTIFIED";
    case CertVerdict::NotCertified: return "NOT_CERTIFIED";
    case CertVerdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct CertificateReport {
  Params params;
  std::vector<ConditionResult> conditions;
  CertVerdict verdict = CertVerdict::Unknown;
  friend bool operator==(const CertificateReport&, const CertificateReport&) = default;
};

namespace detail {

inline ConditionResult make_condition(std::string name, Interval lhs, Interval rhs) {
  const Tri v = certainly_le(lhs, rhs);
  return {std::move(name), lhs, rhs, v};
}

inline Interval point(double v) { return Interval(v); }

// 17 sigma^2 / (54 phi(z)) computed directly; throws range_error when phi(z)
// underflows far enough that the quotient leaves the double range.
inline Interval smallregime_bound(const Interval& sigma, const Interval& z) {
  const Interval z2 = isq(z);
  const Interval phi = (point(4.0) * z2 - point(2.0)) * iexp(-z2);
  return point(17.0) * isq(sigma) / (point(54.0) * phi);
}

}  // namespace detail

inline ConditionResult check_region_A(const Params& p) {
  using detail::point;
  const Interval C = ilog(point(9.0) / point(8.0));
  const Interval ratio = point(p.mu()) / point(p.sigma());
  const Interval bound = C / (point(1.0) + point(2.0) * iexp(-isq(ratio)));
  return detail::make_condition("A: alpha <= C/(1+2exp(-(mu/sigma)^2))", point(p.alpha()), bound);
}

/// The second condition is only evaluated when phi((mu-1)/sigma) is certainly
/// positive. If phi merely underflows (very large (mu-1)/sigma) the comparison
/// is carried out in log scale instead; otherwise it is UNKNOWN.
inline std::pair<ConditionResult, ConditionResult> check_region_B(const Params& p) {
  using detail::point;
  const Interval sigma = point(p.sigma());
  ConditionResult mu_cond = detail::make_condition(
      "B: 1+sigma*sqrt(3/2) <= mu", point(1.0) + sigma * isqrt(point(1.5)), point(p.mu()));

  const std::string name = "B: alpha <= 17 sigma^2/(54 phi((mu-1)/sigma))";
  const Interval z = (point(p.mu()) - point(1.0)) / sigma;
  const Interval z2 = isq(z);
  const Interval poly = point(4.0) * z2 - point(2.0);
  if (!(poly.lo() > 0.0)) {
    return {mu_cond, ConditionResult{name, point(p.alpha()), Interval::entire(), Tri::Unknown}};
  }
  const Interval phi = poly * iexp(-z2);
  if (phi.lo() > 0.0) {
    try {
      return {mu_cond, detail::make_condition(name, point(p.alpha()), detail::smallregime_bound(sigma, z))};
    } catch (const range_error&) {
      // fall through to the log-scale form
    }
  }
  // log(alpha) <= log(17 sigma^2 / 54) + z^2 - log(4 z^2 - 2)
  const Interval log_bound = ilog(point(17.0) * isq(sigma) / point(54.0)) + z2 - ilog(poly);
  return {mu_cond, detail::make_condition(name + " [log scale]", ilog(point(p.alpha())), log_bound)};
}

inline std::pair<ConditionResult, ConditionResult> check_region_C(const Params& p) {
  using detail::point;
  ConditionResult mu_cond = detail::make_condition("C: 1/2 <= mu", point(0.5), point(p.mu()));
  const Interval e = iexp(point(1.0));
  const Interval bound = point(p.sigma()) * isqrt(e / point(2.0));
  ConditionResult alpha_cond = detail::make_condition("C: alpha <= sigma*sqrt(e/2)", point(p.alpha()), bound);
  return {mu_cond, alpha_cond};
}

inline CertVerdict combine_verdicts(const std::vector<ConditionResult>& conditions) {
  bool any_false = false;
  bool all_true = true;
  for (const auto& c : conditions) {
    any_false = any_false || c.verdict == Tri::False;
    all_true = all_true && c.verdict == Tri::True;
  }
  if (any_false) return CertVerdict::NotCertified;
  return all_true ? CertVerdict::Certified : CertVerdict::Unknown;
}

/// Always reports exactly five conditions, in the order A, B(mu), B(alpha),
/// C(mu), C(alpha).
inline CertificateReport certify_S2(const Params& p) {
  CertificateReport report{p, {}, CertVerdict::Unknown};
  report.conditions.push_back(check_region_A(p));
  auto [b1, b2] = check_region_B(p);
  report.conditions.push_back(std::move(b1));
  report.conditions.push_back(std::move(b2));
  auto [c1, c2] = check_region_C(p);
  report.conditions.push_back(std::move(c1));
  report.conditions.push_back(std::move(c2));
  report.verdict = combine_verdicts(report.conditions);
  return report;
}

inline const char* verdict_note(CertVerdict v) {
  switch (v) {
    case CertVerdict::Certified:
      return "every hypothesis of the region-wise sufficient conditions holds";
    case CertVerdict::NotCertified:
      return "sufficient conditions not established; this does not show that f is outside S_2";
    case CertVerdict::Unknown:
      return "interval enclosures too wide to decide at least one condition";
  }
  return "";
}

}  // namespace subadd
