#pragma once

#include <stdexcept>

namespace subadd {

/// Argument outside the mathematical domain of a function (log of a
/// nonpositive number, derivative at the kink x = 0, ...).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Malformed or out-of-range user input (bad parameters, unknown handle).
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Interval division by an interval that contains zero.
struct singularity_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// An interval endpoint left the finite floating-point range.
struct range_error : std::range_error {
  using std::range_error::range_error;
};

/// An oracle was asked to run outside the hypotheses it is stated under.
struct precondition_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// An exact check that holds by construction failed. Never expected to fire.
struct construction_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace subadd
