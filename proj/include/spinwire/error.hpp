#pragma once

#include <stdexcept>
#include <string>

namespace spinwire {

// Bad input: violated preconditions, malformed configuration.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-posed computation that could not be completed (solver failure,
// no root in the search window, truncation that never certifies).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinwire
