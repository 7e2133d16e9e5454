#pragma once

#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <concepts>
#include <string>

#include "subadd/errors.hpp"

namespace subadd {

/// Software binary floating point with a `Bits`-bit significand.
template <unsigned Bits>
using binary_float = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// Default high-precision type backing oracle values and violation margins.
using hp_real = binary_float<128>;

namespace detail {

template <class Real>
Real log1p(const Real& x) {
  if constexpr (std::floating_point<Real>) {
    return std::log1p(x);
  } else {
    return boost::math::log1p(x);
  }
}

}  // namespace detail

/// Calls `fn(Real{})` with the smallest supported high-precision type whose
/// significand has at least `bits` bits (128, 256 or 512).
template <class Fn>
decltype(auto) with_precision(unsigned bits, Fn&& fn) {
  if (bits == 0) throw input_error("precision_bits must be positive");
  if (bits <= 128) return fn(binary_float<128>{});
  if (bits <= 256) return fn(binary_float<256>{});
  if (bits <= 512) return fn(binary_float<512>{});
  throw input_error("precision_bits above 512 is not supported (got " + std::to_string(bits) + ")");
}

}  // namespace subadd
