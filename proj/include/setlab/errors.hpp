#pragma once

#include <stdexcept>

namespace setlab {

/// Caller passed something malformed or out of contract.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request is well-formed but outside what this build will run
/// (size limits, unmet hypotheses of a transformation).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace setlab
