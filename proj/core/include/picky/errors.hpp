#pragma once

#include <stdexcept>
#include <string>

namespace picky {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or an unmet precondition (wrong degree, non-subgroup, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A group source names no file and no known constructor.
class UnknownGroupError : public InputError {
 public:
  using InputError::InputError;
};

/// Text that is not valid cycle notation.
class CycleSyntaxError : public InputError {
 public:
  using InputError::InputError;
};

/// The request exceeds the desk-scale limits of the engine.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A computation contradicted a statement the engine checks. These are
/// report events, never silently dropped.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace picky
