#pragma once

#include <stdexcept>
#include <string>

namespace cubeperc {

/// Instance too large for the exact or in-memory algorithm requested.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: bad ranges, malformed paths, inconsistent
/// configurations.  RangeError and DomainError refine it.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RangeError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A cover time was requested but some vertex was never infected.
class IncompleteCoverage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cubeperc
