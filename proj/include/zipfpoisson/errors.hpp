#pragma once

#include <stdexcept>

namespace zipfpoisson {

/// Base class for all library-specific failures. Precondition violations
/// (negative counts, out-of-range indices) throw std::domain_error instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// find_root was given a bracket whose endpoints do not straddle a sign change.
struct BracketError : Error {
  using Error::Error;
};

/// A callback produced a non-finite value where a finite one is required.
struct EvaluationError : Error {
  using Error::Error;
};

/// A gauge transform broke the strict time ordering.
struct GaugeOrderingError : Error {
  using Error::Error;
};

/// local_solve was started from an infeasible point.
struct InitError : Error {
  using Error::Error;
};

/// Inconsistent or unusable option combination.
struct ConfigError : Error {
  using Error::Error;
};

/// Power-law fit requested on a distribution with too little support.
struct FitError : Error {
  using Error::Error;
};

/// Malformed rating CSV input (strict mode or structural defects).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace zipfpoisson
