#pragma once

// A subadditive bijection on a positive rational cone H with liminf 0 and
// limsup 1 at the origin.
//
// H is spanned over Q+ by the Q-linearly independent family
//
//   BASE n    : p_n = 2^-n / sqrt(prime #(2n-1))      (0 < p_n < 2^-n)
//   RESERVE k : 1 / sqrt(prime #(2k))
//
// so elements are sparse positive-rational coefficient vectors and every
// structural question (membership in a ray, sums, the map and its inverse) is
// answered exactly on coefficients. Real values are only needed for the limit
// sequences and are enclosed with interval arithmetic.
//
// On the ray P_n = Q+ p_n the map is the concave piecewise-linear
//   f_n(r p_n) = q_n r p_n          for r <= 1
//              = (r + q_n - 1) p_n  for r >  1
// with q_n the smallest integer such that 1 - 2^-n < p_n q_n < 1; off the
// rays it is the identity.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "subadd/errors.hpp"
#include "subadd/interval.hpp"
#include "subadd/real.hpp"

namespace subadd::cone {

using boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class GeneratorKind { Base, Reserve };

struct GeneratorId {
  GeneratorKind kind = GeneratorKind::Base;
  unsigned index = 1;
  auto operator<=>(const GeneratorId&) const = default;
};

inline GeneratorId base(unsigned n) { return {GeneratorKind::Base, n}; }
inline GeneratorId reserve(unsigned k) { return {GeneratorKind::Reserve, k}; }

inline std::string to_string(const GeneratorId& id) {
  return (id.kind == GeneratorKind::Base ? "BASE " : "RESERVE ") + std::to_string(id.index);
}

/// value = 2^-scale_exp / sqrt(prime).
struct Generator {
  GeneratorId id;
  unsigned scale_exp = 0;
  unsigned prime = 2;
};

namespace detail {

inline std::vector<unsigned> first_primes(std::size_t count) {
  std::vector<unsigned> primes;
  for (unsigned c = 2; primes.size() < count; ++c) {
    bool is_prime = true;
    for (unsigned p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(c);
  }
  return primes;
}

template <class T>
basic_interval<T> enclose_int(const cpp_int& v) {
  const T t = static_cast<T>(v);
  return {boost::math::float_prior(t), boost::math::float_next(t)};
}

template <class T>
basic_interval<T> enclose_pow2(int e) {
  using std::ldexp;
  return basic_interval<T>(T(ldexp(T(1), e)));
}

}  // namespace detail

template <class T = double>
basic_interval<T> enclose(const Rational& r) {
  return detail::enclose_int<T>(boost::multiprecision::numerator(r)) /
         detail::enclose_int<T>(boost::multiprecision::denominator(r));
}

template <class T = double>
basic_interval<T> enclose(const Generator& g) {
  return detail::enclose_pow2<T>(-static_cast<int>(g.scale_exp)) /
         isqrt(basic_interval<T>(T(g.prime)));
}

/// Immutable once built; shared read-only by every operation below.
class GeneratorTable {
 public:
  GeneratorTable(std::size_t n_base, std::size_t n_reserve) {
    if (n_base < 1 || n_reserve < 1) throw input_error("make_generators: counts must be >= 1");
    const auto primes = detail::first_primes(std::max(2 * n_base - 1, 2 * n_reserve));
    for (unsigned n = 1; n <= n_base; ++n) {
      const Generator g{base(n), n, primes[2 * n - 2]};
      base_.push_back(g);
      q_.push_back(smallest_q(n, g.prime));
    }
    for (unsigned k = 1; k <= n_reserve; ++k) reserve_.push_back({reserve(k), 0, primes[2 * k - 1]});
  }

  std::size_t n_base() const noexcept { return base_.size(); }
  std::size_t n_reserve() const noexcept { return reserve_.size(); }

  bool contains(const GeneratorId& id) const noexcept {
    const std::size_t size = id.kind == GeneratorKind::Base ? base_.size() : reserve_.size();
    return id.index >= 1 && id.index <= size;
  }

  const Generator& generator(const GeneratorId& id) const {
    if (!contains(id)) throw input_error("generator " + to_string(id) + " is outside the table");
    return id.kind == GeneratorKind::Base ? base_[id.index - 1] : reserve_[id.index - 1];
  }

  /// The knee multiplier q_n of ray n.
  const cpp_int& q(unsigned n) const {
    if (n < 1 || n > q_.size()) throw input_error("q_of: ray " + std::to_string(n) + " is outside the table");
    return q_[n - 1];
  }

 private:
  // p_n q > 1 - 2^-n  <=>  q > (2^n - 1) sqrt(P)  <=>  q^2 > (2^n - 1)^2 P,
  // and (2^n - 1)^2 P is never a perfect square, so q = isqrt(...) + 1.
  static cpp_int smallest_q(unsigned n, unsigned prime) {
    const cpp_int two_n = cpp_int(1) << n;
    const cpp_int lower = (two_n - 1) * (two_n - 1) * prime;
    cpp_int q = boost::multiprecision::sqrt(lower) + 1;
    if (!(q * q < two_n * two_n * prime)) {
      throw construction_error("q_of: no integer in the admissible window for ray " + std::to_string(n));
    }
    return q;
  }

  std::vector<Generator> base_;
  std::vector<Generator> reserve_;
  std::vector<cpp_int> q_;
};

inline GeneratorTable make_generators(std::size_t n_base, std::size_t n_reserve) {
  return GeneratorTable(n_base, n_reserve);
}

inline const cpp_int& q_of(const GeneratorTable& table, unsigned n) { return table.q(n); }

namespace detail {

template <class T>
Tri certify_q_at(const GeneratorTable& table, unsigned n) {
  const basic_interval<T> one(T(1));
  const basic_interval<T> product = enclose<T>(table.generator(base(n))) * enclose_int<T>(table.q(n));
  const basic_interval<T> lower = one - enclose_pow2<T>(-static_cast<int>(n));
  const Tri above = certainly_lt(lower, product);
  const Tri below = certainly_lt(product, one);
  if (above == Tri::True && below == Tri::True) return Tri::True;
  if (above == Tri::False || below == Tri::False) return Tri::False;
  return Tri::Unknown;
}

}  // namespace detail

/// Decides 1 - 2^-n < p_n q_n < 1 with interval enclosures of p_n, escalating
/// from double to 128, 256 and 512-bit significands until the answer is certain.
inline Tri certify_q(const GeneratorTable& table, unsigned n) {
  Tri t = detail::certify_q_at<double>(table, n);
  if (t == Tri::Unknown) t = detail::certify_q_at<binary_float<128>>(table, n);
  if (t == Tri::Unknown) t = detail::certify_q_at<binary_float<256>>(table, n);
  if (t == Tri::Unknown) t = detail::certify_q_at<binary_float<512>>(table, n);
  return t;
}

// ---------------------------------------------------------------------------

class ConeElement {
 public:
  using Coeffs = std::map<GeneratorId, Rational>;

  explicit ConeElement(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw input_error("ConeElement: elements of H are nonzero");
    for (const auto& [id, c] : coeffs_) {
      if (c <= 0) throw input_error("ConeElement: coefficient of " + to_string(id) + " must be > 0");
      if (id.index < 1) throw input_error("ConeElement: generator index must be >= 1");
    }
  }

  static ConeElement on(GeneratorId id, Rational c) { return ConeElement(Coeffs{{id, std::move(c)}}); }

  const Coeffs& coeffs() const noexcept { return coeffs_; }

  /// n if the support is exactly {BASE n}, i.e. the element lies on ray P_n.
  std::optional<unsigned> ray() const {
    if (coeffs_.size() == 1 && coeffs_.begin()->first.kind == GeneratorKind::Base) {
      return coeffs_.begin()->first.index;
    }
    return std::nullopt;
  }

  friend ConeElement operator+(const ConeElement& a, const ConeElement& b) {
    Coeffs sum = a.coeffs_;
    for (const auto& [id, c] : b.coeffs_) sum[id] += c;
    return ConeElement(std::move(sum));
  }

  friend bool operator==(const ConeElement&, const ConeElement&) = default;

 private:
  Coeffs coeffs_;
};

template <class T = double>
basic_interval<T> value(const GeneratorTable& table, const ConeElement& x) {
  basic_interval<T> total(T(0));
  for (const auto& [id, c] : x.coeffs()) total = total + enclose<T>(c) * enclose<T>(table.generator(id));
  return total;
}

inline ConeElement apply_f(const GeneratorTable& table, const ConeElement& x) {
  const auto n = x.ray();
  if (!n) return x;
  const Rational q(table.q(*n));
  const Rational& r = x.coeffs().begin()->second;
  return ConeElement::on(base(*n), r <= 1 ? Rational(q * r) : Rational(r + q - 1));
}

inline ConeElement apply_f_inv(const GeneratorTable& table, const ConeElement& y) {
  const auto n = y.ray();
  if (!n) return y;
  const Rational q(table.q(*n));
  const Rational& s = y.coeffs().begin()->second;
  return ConeElement::on(base(*n), s <= q ? Rational(s / q) : Rational(s - q + 1));
}

// ---------------------------------------------------------------------------
// Subadditivity witnesses

enum class PairCase { SameRay, CrossRay, RayPlusOffray, BothOffray };

inline const char* to_string(PairCase c) {
  switch (c) {
    case PairCase::SameRay: return "SAME_RAY";
    case PairCase::CrossRay: return "CROSS_RAY";
    case PairCase::RayPlusOffray: return "RAY_PLUS_OFFRAY";
    case PairCase::BothOffray: return "BOTH_OFFRAY";
  }
  return "?";
}

/// `slack` holds the nonzero coefficients of f(x) + f(y) - f(x + y); every one
/// of them is positive, which certifies f(x + y) <= f(x) + f(y) because all
/// generators are positive reals. An empty slack means equality.
struct SubadditivityWitness {
  PairCase case_tag = PairCase::BothOffray;
  ConeElement::Coeffs slack;
};

inline PairCase classify_pair(const ConeElement& x, const ConeElement& y) {
  const auto rx = x.ray();
  const auto ry = y.ray();
  if (rx && ry) return *rx == *ry ? PairCase::SameRay : PairCase::CrossRay;
  if (rx || ry) return PairCase::RayPlusOffray;
  return PairCase::BothOffray;
}

inline SubadditivityWitness check_subadditive_pair(const GeneratorTable& table, const ConeElement& x,
                                                   const ConeElement& y) {
  SubadditivityWitness w{classify_pair(x, y), {}};
  const ConeElement fy = apply_f(table, y);
  const ConeElement fxy = apply_f(table, x + y);
  ConeElement::Coeffs diff = apply_f(table, x).coeffs();
  for (const auto& [id, c] : fy.coeffs()) diff[id] += c;
  for (const auto& [id, c] : fxy.coeffs()) diff[id] -= c;
  for (auto& [id, c] : diff) {
    if (c < 0) {
      throw construction_error("subadditivity fails on coordinate " + to_string(id) + " for a " +
                               to_string(w.case_tag) + " pair");
    }
    if (c != 0) w.slack.emplace(id, std::move(c));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Limit sequences at the origin

using hp_interval = basic_interval<hp_real>;

struct SequenceRow {
  unsigned index = 0;
  hp_interval x;
  hp_interval fx;
  bool certified = false;
};

/// (n, p_n, f(p_n) = q_n p_n); `certified` records 1 - 2^-n < f(p_n) < 1 and p_n < 2^-n.
inline std::vector<SequenceRow> limsup_sequence(const GeneratorTable& table, unsigned N) {
  if (N < 1 || N > table.n_base()) throw input_error("limsup_sequence: N must lie in [1, n_base]");
  std::vector<SequenceRow> rows;
  for (unsigned n = 1; n <= N; ++n) {
    const ConeElement pn = ConeElement::on(base(n), Rational(1));
    const hp_interval x = value<hp_real>(table, pn);
    const hp_interval fx = value<hp_real>(table, apply_f(table, pn));
    const bool below_scale = certainly_lt(x, detail::enclose_pow2<hp_real>(-static_cast<int>(n))) == Tri::True;
    rows.push_back({n, x, fx, below_scale && certify_q(table, n) == Tri::True});
  }
  return rows;
}

/// (k, x_k, f(x_k)) for x_k = (1/k) * RESERVE 1, which lies off every ray;
/// `certified` records f(x_k) = x_k exactly and x_k < x_{k-1}.
inline std::vector<SequenceRow> liminf_sequence(const GeneratorTable& table, unsigned N) {
  if (N < 1) throw input_error("liminf_sequence: N must be >= 1");
  std::vector<SequenceRow> rows;
  for (unsigned k = 1; k <= N; ++k) {
    const ConeElement xk = ConeElement::on(reserve(1), Rational(1, k));
    const ConeElement fk = apply_f(table, xk);
    const hp_interval x = value<hp_real>(table, xk);
    bool ok = fk == xk;
    if (!rows.empty()) ok = ok && certainly_lt(x, rows.back().x) == Tri::True;
    rows.push_back({k, x, value<hp_real>(table, fk), ok});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Random elements

template <class Rng>
Rational random_rational(Rng& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

/// Ray elements (coefficients on both sides of the knee), single reserve
/// generators, and mixed combinations of 2-3 generators, in roughly equal share.
template <class Rng>
ConeElement sample_element(const GeneratorTable& table, Rng& rng) {
  std::uniform_int_distribution<unsigned> pick_base(1, static_cast<unsigned>(table.n_base()));
  std::uniform_int_distribution<unsigned> pick_reserve(1, static_cast<unsigned>(table.n_reserve()));
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0: return ConeElement::on(base(pick_base(rng)), random_rational(rng, 40, 12));
    case 1: return ConeElement::on(reserve(pick_reserve(rng)), random_rational(rng, 40, 12));
    default: {
      ConeElement::Coeffs c;
      std::uniform_int_distribution<int> terms(2, 3);
      std::bernoulli_distribution use_base(0.7);
      const int t = terms(rng);
      while (static_cast<int>(c.size()) < t) {
        const GeneratorId id = use_base(rng) ? base(pick_base(rng)) : reserve(pick_reserve(rng));
        c[id] = random_rational(rng, 40, 12);
      }
      return ConeElement(std::move(c));
    }
  }
}

/// A pair whose case (same ray, cross ray, ray + off-ray, both off-ray) is
/// drawn uniformly, so each branch of the witness is exercised.
template <class Rng>
std::pair<ConeElement, ConeElement> sample_pair(const GeneratorTable& table, Rng& rng) {
  std::uniform_int_distribution<unsigned> pick_base(1, static_cast<unsigned>(table.n_base()));
  std::uniform_int_distribution<int> which(0, 3);
  auto on_ray = [&](unsigned n) { return ConeElement::on(base(n), random_rational(rng, 40, 12)); };
  auto off_ray = [&] {
    for (;;) {
      ConeElement e = sample_element(table, rng);
      if (!e.ray()) return e;
    }
  };
  switch (which(rng)) {
    case 0: {
      const unsigned n = pick_base(rng);
      ConeElement a = on_ray(n);
      return {a, on_ray(n)};
    }
    case 1: {
      const unsigned n = pick_base(rng);
      unsigned m = pick_base(rng);
      if (table.n_base() > 1) {
        while (m == n) m = pick_base(rng);
      }
      ConeElement a = on_ray(n);
      return {a, on_ray(m)};
    }
    case 2: {
      ConeElement a = on_ray(pick_base(rng));
      ConeElement b = off_ray();
      if (std::bernoulli_distribution(0.5)(rng)) return {b, a};
      return {a, b};
    }
    default: {
      ConeElement a = off_ray();
      return {a, off_ray()};
    }
  }
}

namespace detail {

// Rescales `x` by a rational factor so that its value is certainly below eps.
template <class Rng>
ConeElement shrink_below(const GeneratorTable& table, ConeElement x, const Rational& eps, Rng& rng) {
  const Interval eps_box = enclose(eps);
  const double v = value(table, x).hi();
  // Rational upper bound for v, then a random fraction of eps / bound.
  const Rational bound(cpp_int(std::ceil(std::ldexp(v, 40))), cpp_int(1) << 40);
  std::uniform_int_distribution<int> frac(1, 999);
  const Rational scale = eps / bound * Rational(frac(rng), 1000);
  ConeElement::Coeffs c;
  for (const auto& [id, coeff] : x.coeffs()) c[id] = coeff * scale;
  ConeElement out(std::move(c));
  while (certainly_lt(value(table, out), eps_box) != Tri::True) {
    ConeElement::Coeffs half;
    for (const auto& [id, coeff] : out.coeffs()) half[id] = coeff / 2;
    out = ConeElement(std::move(half));
  }
  return out;
}

}  // namespace detail

/// Draws `samples` elements of H with value < eps (ray and off-ray) and checks
/// that the enclosure of f(x) lies certainly below 1 + eps for each.
inline bool upper_bound_check(const GeneratorTable& table, const Rational& eps, std::size_t samples,
                              std::uint64_t seed = 1) {
  if (!(eps > 0 && eps < 1)) throw input_error("upper_bound_check: eps must lie in (0, 1)");
  if (samples < 1) throw input_error("upper_bound_check: samples must be >= 1");
  std::mt19937_64 rng(seed);
  const Interval limit = enclose(Rational(1 + eps));
  for (std::size_t i = 0; i < samples; ++i) {
    const ConeElement x = detail::shrink_below(table, sample_element(table, rng), eps, rng);
    if (certainly_lt(value(table, apply_f(table, x)), limit) != Tri::True) return false;
  }
  return true;
}

}  // namespace subadd::cone
