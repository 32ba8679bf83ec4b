#pragma once

#include <stdexcept>
#include <string>

namespace cptrefine {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad cardinalities, unnormalized rows, invalid specs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two tables (or a table and a spec) disagree on shape.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search was asked to enumerate a space beyond its guard.
class SearchGuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cptrefine
