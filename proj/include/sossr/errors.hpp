#pragma once

#include <stdexcept>
#include <string>

namespace sossr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A monomial cannot be represented inside the moment matrix at hand.
struct DegreeTooHigh : Error {
  using Error::Error;
};

/// Conditioning normalizer fell below the floor.
struct DegenerateConditioning : Error {
  using Error::Error;
};

struct ConfigInvalid : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct SolverFailed : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace sossr
