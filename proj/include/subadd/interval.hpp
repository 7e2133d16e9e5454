#pragma once

// Closed intervals with outward rounding by representable-number stepping.
//
// Every operation evaluates the endpoint formula in round-to-nearest and then
// moves each endpoint outward by a fixed number of representable steps: 2 for
// + - * /, 4 for exp/log/sqrt. This keeps the enclosure sound without
// switching hardware rounding modes, provided the underlying elementary
// functions are accurate to within a couple of units in the last place.

#include <boost/math/special_functions/next.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "subadd/errors.hpp"
#include "subadd/real.hpp"

namespace subadd {

enum class Tri { True, False, Unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::True: return "TRUE";
    case Tri::False: return "FALSE";
    case Tri::Unknown: return "UNKNOWN";
  }
  return "?";
}

inline constexpr int kArithSteps = 2;
inline constexpr int kElementarySteps = 4;

template <class T>
class basic_interval {
 public:
  using value_type = T;

  basic_interval() = default;
  explicit basic_interval(const T& v) : basic_interval(v, v) {}
  basic_interval(const T& lo, const T& hi) : lo_(lo), hi_(hi) {
    using std::isfinite;
    using boost::multiprecision::isfinite;
    if (!isfinite(lo) || !isfinite(hi)) throw range_error("interval endpoint is not finite");
    if (lo > hi) throw input_error("interval: lo > hi");
  }

  /// The whole finite line; carries no information.
  static basic_interval entire() {
    return {std::numeric_limits<T>::lowest(), (std::numeric_limits<T>::max)()};
  }

  const T& lo() const noexcept { return lo_; }
  const T& hi() const noexcept { return hi_; }
  T width() const { return hi_ - lo_; }
  T mid() const { return lo_ / 2 + hi_ / 2; }
  bool contains(const T& v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }

  friend bool operator==(const basic_interval&, const basic_interval&) = default;

 private:
  T lo_{0};
  T hi_{0};
};

using Interval = basic_interval<double>;

namespace detail {

template <class T>
T step_down(const T& v, int n) {
  try {
    return boost::math::float_advance(v, -n);
  } catch (const std::overflow_error&) {
    throw range_error("outward rounding left the finite range");
  }
}

template <class T>
T step_up(const T& v, int n) {
  try {
    return boost::math::float_advance(v, n);
  } catch (const std::overflow_error&) {
    throw range_error("outward rounding left the finite range");
  }
}

template <class T>
void require_finite(const T& lo, const T& hi, const char* op) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  if (!isfinite(lo) || !isfinite(hi)) throw range_error(std::string(op) + ": result overflows");
}

template <class T>
basic_interval<T> widen(const T& lo, const T& hi, int steps, const char* op) {
  require_finite(lo, hi, op);
  T l = step_down(lo, steps);
  T h = step_up(hi, steps);
  require_finite(l, h, op);
  return {l, h};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Arithmetic

template <class T>
basic_interval<T> iadd(const basic_interval<T>& x, const basic_interval<T>& y) {
  return detail::widen<T>(x.lo() + y.lo(), x.hi() + y.hi(), kArithSteps, "iadd");
}

template <class T>
basic_interval<T> isub(const basic_interval<T>& x, const basic_interval<T>& y) {
  return detail::widen<T>(x.lo() - y.hi(), x.hi() - y.lo(), kArithSteps, "isub");
}

template <class T>
basic_interval<T> ineg(const basic_interval<T>& x) {
  return {-x.hi(), -x.lo()};
}

template <class T>
basic_interval<T> imul(const basic_interval<T>& x, const basic_interval<T>& y) {
  const T a = x.lo() * y.lo();
  const T b = x.lo() * y.hi();
  const T c = x.hi() * y.lo();
  const T d = x.hi() * y.hi();
  const T lo = (std::min)({a, b, c, d});
  const T hi = (std::max)({a, b, c, d});
  return detail::widen<T>(lo, hi, kArithSteps, "imul");
}

template <class T>
basic_interval<T> idiv(const basic_interval<T>& x, const basic_interval<T>& y) {
  if (y.contains_zero()) throw singularity_error("idiv: divisor interval contains 0");
  const T a = x.lo() / y.lo();
  const T b = x.lo() / y.hi();
  const T c = x.hi() / y.lo();
  const T d = x.hi() / y.hi();
  const T lo = (std::min)({a, b, c, d});
  const T hi = (std::max)({a, b, c, d});
  return detail::widen<T>(lo, hi, kArithSteps, "idiv");
}

template <class T>
basic_interval<T> operator+(const basic_interval<T>& x, const basic_interval<T>& y) { return iadd(x, y); }
template <class T>
basic_interval<T> operator-(const basic_interval<T>& x, const basic_interval<T>& y) { return isub(x, y); }
template <class T>
basic_interval<T> operator-(const basic_interval<T>& x) { return ineg(x); }
template <class T>
basic_interval<T> operator*(const basic_interval<T>& x, const basic_interval<T>& y) { return imul(x, y); }
template <class T>
basic_interval<T> operator/(const basic_interval<T>& x, const basic_interval<T>& y) { return idiv(x, y); }

// ---------------------------------------------------------------------------
// Elementary functions

/// exp is monotone; an underflowing lower endpoint is clamped to 0 so that the
/// enclosure stays nonnegative and still contains the true value.
template <class T>
basic_interval<T> iexp(const basic_interval<T>& x) {
  using std::exp;
  const T lo = exp(x.lo());
  const T hi = exp(x.hi());
  detail::require_finite(lo, hi, "iexp");
  T l = detail::step_down(lo, kElementarySteps);
  if (l < 0) l = T(0);
  T h = detail::step_up(hi, kElementarySteps);
  detail::require_finite(l, h, "iexp");
  return {l, h};
}

template <class T>
basic_interval<T> ilog(const basic_interval<T>& x) {
  using std::log;
  if (!(x.lo() > 0)) throw domain_error("ilog: interval must be strictly positive");
  return detail::widen<T>(log(x.lo()), log(x.hi()), kElementarySteps, "ilog");
}

template <class T>
basic_interval<T> isqrt(const basic_interval<T>& x) {
  using std::sqrt;
  if (x.lo() < 0) throw domain_error("isqrt: interval must be nonnegative");
  T l = detail::step_down(T(sqrt(x.lo())), kElementarySteps);
  if (l < 0) l = T(0);
  T h = detail::step_up(T(sqrt(x.hi())), kElementarySteps);
  detail::require_finite(l, h, "isqrt");
  return {l, h};
}

/// Square, split at 0 so that [-2, 1]^2 = [0, 4] rather than [-2, 4].
template <class T>
basic_interval<T> isq(const basic_interval<T>& x) {
  if (x.lo() >= 0) return detail::widen<T>(x.lo() * x.lo(), x.hi() * x.hi(), kArithSteps, "isq");
  if (x.hi() <= 0) return detail::widen<T>(x.hi() * x.hi(), x.lo() * x.lo(), kArithSteps, "isq");
  const T m = (std::max)(x.lo() * x.lo(), x.hi() * x.hi());
  T h = detail::step_up(m, kArithSteps);
  detail::require_finite(m, h, "isq");
  return {T(0), h};
}

// ---------------------------------------------------------------------------
// Comparisons

/// TRUE iff every x in X is <= every y in Y; FALSE iff every x exceeds every y.
template <class T>
Tri certainly_le(const basic_interval<T>& x, const basic_interval<T>& y) {
  if (x.hi() <= y.lo()) return Tri::True;
  if (x.lo() > y.hi()) return Tri::False;
  return Tri::Unknown;
}

/// Strict variant: TRUE iff X.hi < Y.lo, FALSE iff X.lo >= Y.hi.
template <class T>
Tri certainly_lt(const basic_interval<T>& x, const basic_interval<T>& y) {
  if (x.hi() < y.lo()) return Tri::True;
  if (x.lo() >= y.hi()) return Tri::False;
  return Tri::Unknown;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const basic_interval<T>& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

}  // namespace subadd
