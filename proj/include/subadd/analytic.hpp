#pragma once

// The perturbed function f = g + alpha * (h - h(0)) and the scalar helpers
// used to bound its gap functional.
//
//   g(x) = |x| + log(1 + |x|)
//   h(x) = exp(-((|x| - mu) / sigma)^2)          (even Gaussian ring)
//   gap_w(a; x, y) = a w(x) + w(y) - w(a x + y)  (>= 0 everywhere <=> w is a-subadditive)
//
// Every scalar routine is a template over the arithmetic type so that the
// same formula path serves both fast double scans and the high-precision
// evaluations in `hp_real`.

#include <cmath>
#include <string>
#include <string_view>

#include "subadd/errors.hpp"
#include "subadd/real.hpp"

namespace subadd {

/// The triple (mu, sigma, alpha): ring centre, ring width and perturbation
/// amplitude. All three must be finite and strictly positive.
class Params {
 public:
  Params(double mu, double sigma, double alpha) : mu_(mu), sigma_(sigma), alpha_(alpha) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(mu) || !positive(sigma) || !positive(alpha)) {
      throw input_error("Params: mu, sigma and alpha must be finite and > 0 (got mu=" +
                        std::to_string(mu) + ", sigma=" + std::to_string(sigma) +
                        ", alpha=" + std::to_string(alpha) + ")");
    }
  }

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double alpha() const noexcept { return alpha_; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  double mu_;
  double sigma_;
  double alpha_;
};

/// The subadditivity order a > 0 in f(a x + y) <= a f(x) + f(y).
class Order {
 public:
  explicit Order(double a) : a_(a) {
    if (!std::isfinite(a) || a <= 0.0) throw input_error("Order: a must be finite and > 0");
  }
  double value() const noexcept { return a_; }
  friend bool operator==(const Order&, const Order&) = default;

 private:
  double a_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct RegionFlags {
  bool in_A = false;
  bool in_B = false;
  bool in_C = false;
  friend bool operator==(const RegionFlags&, const RegionFlags&) = default;
};

/// Which function a gap or derivative query refers to. `h_shifted` is h - h(0).
enum class Fn { f, g, h, h_shifted };

inline std::string_view to_string(Fn fn) {
  switch (fn) {
    case Fn::f: return "f";
    case Fn::g: return "g";
    case Fn::h: return "h";
    case Fn::h_shifted: return "h-h0";
  }
  return "?";
}

inline Fn parse_fn(std::string_view name) {
  if (name == "f") return Fn::f;
  if (name == "g") return Fn::g;
  if (name == "h") return Fn::h;
  if (name == "h-h0" || name == "h_shifted") return Fn::h_shifted;
  throw input_error("unknown function handle '" + std::string(name) + "' (expected f, g, h or h-h0)");
}

// ---------------------------------------------------------------------------
// Scalar functions

template <class Real = double>
Real eval_g(const Real& x) {
  using std::abs;
  const Real ax = abs(x);
  return ax + detail::log1p(ax);
}

/// Underflows silently to 0 far from the ring (e.g. h(0) for mu/sigma ~ 33).
template <class Real = double>
Real eval_h(const Real& x, const Params& p) {
  using std::abs;
  using std::exp;
  const Real z = (abs(x) - Real(p.mu())) / Real(p.sigma());
  return exp(-(z * z));
}

template <class Real = double>
Real eval_f(const Real& x, const Params& p) {
  return eval_g(x) + Real(p.alpha()) * (eval_h(x, p) - eval_h(Real(0), p));
}

template <class Real = double>
Real evaluate(Fn fn, const Real& x, const Params& p) {
  switch (fn) {
    case Fn::f: return eval_f(x, p);
    case Fn::g: return eval_g(x);
    case Fn::h: return eval_h(x, p);
    case Fn::h_shifted: return eval_h(x, p) - eval_h(Real(0), p);
  }
  throw input_error("unknown function handle");
}

/// a w(x) + w(y) - w(a x + y); nonnegative iff the a-subadditivity
/// inequality holds at (x, y).
template <class Real = double>
Real gap(const Real& a, Fn fn, const Real& x, const Real& y, const Params& p) {
  return a * evaluate(fn, x, p) + evaluate(fn, y, p) - evaluate(fn, Real(a * x + y), p);
}

inline double gap(Order a, Fn fn, double x, double y, const Params& p) {
  return gap<double>(a.value(), fn, x, y, p);
}

/// phi(z) = (4 z^2 - 2) exp(-z^2), z >= 0.
template <class Real = double>
Real eval_phi(const Real& z) {
  using std::exp;
  if (z < 0) throw domain_error("eval_phi: z must be >= 0");
  const Real z2 = z * z;
  return (4 * z2 - 2) * exp(-z2);
}

/// lambda(z) = 2 log(1+z) - log(1+2z), evaluated as log1p(z^2 / (1+2z)),
/// which is the same quantity without cancellation near 0.
template <class Real = double>
Real eval_lambda(const Real& z) {
  if (z < 0) throw domain_error("eval_lambda: z must be >= 0");
  return detail::log1p(Real(z * z / (1 + 2 * z)));
}

/// psi(z) = log((1+z)^2 (1-z)) on [0, 1).
template <class Real = double>
Real eval_psi(const Real& z) {
  if (z < 0 || z >= 1) throw domain_error("eval_psi: z must lie in [0, 1)");
  return 2 * detail::log1p(z) + detail::log1p(Real(-z));
}

/// C = lambda(1/2) = log(9/8).
template <class Real = double>
Real eval_C() {
  using std::log;
  return log(Real(1.125));
}

// Region boundaries are non-strict on both sides, so boundary points belong
// to two regions at once.
inline RegionFlags classify_region(double x, double y) {
  const double ax = std::abs(x);
  const double t = 2.0 * ax + std::abs(y);
  return {ax >= 0.5, t <= 1.0, ax <= 0.5 && t >= 1.0};
}

// ---------------------------------------------------------------------------
// Derivatives (f, g, h are smooth away from x = 0)

template <class Real = double>
Real f_prime(const Real& t, const Params& p) {
  if (!(t > 0)) throw domain_error("f_prime: t must be > 0");
  const Real sigma(p.sigma());
  return 1 + 1 / (1 + t) + 2 * Real(p.alpha()) / (sigma * sigma) * (Real(p.mu()) - t) * eval_h(t, p);
}

/// h'(x) = 2 h(x) (mu - |x|) / sigma^2 * sign(x).
template <class Real = double>
Real h_prime(const Real& x, const Params& p) {
  using std::abs;
  if (x == 0) throw domain_error("h_prime: h is not differentiable at 0");
  const Real sigma(p.sigma());
  const Real d = 2 * eval_h(x, p) * (Real(p.mu()) - abs(x)) / (sigma * sigma);
  return x > 0 ? d : Real(-d);
}

/// h''(x) = phi(||x| - mu| / sigma) / sigma^2.
template <class Real = double>
Real h_second(const Real& x, const Params& p) {
  using std::abs;
  if (x == 0) throw domain_error("h_second: h is not differentiable at 0");
  const Real sigma(p.sigma());
  return eval_phi(Real(abs(abs(x) - Real(p.mu())) / sigma)) / (sigma * sigma);
}

/// Second derivative of the selected function on R \ {0}.
template <class Real = double>
Real second_derivative(Fn fn, const Real& x, const Params& p) {
  using std::abs;
  if (x == 0) throw domain_error("second_derivative: undefined at 0");
  const Real one_plus = 1 + abs(x);
  const Real g2 = -1 / (one_plus * one_plus);
  switch (fn) {
    case Fn::g: return g2;
    case Fn::h:
    case Fn::h_shifted: return h_second(x, p);
    case Fn::f: return g2 + Real(p.alpha()) * h_second(x, p);
  }
  throw input_error("unknown function handle");
}

}  // namespace subadd
