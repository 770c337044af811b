#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace phasefield {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on grids of different shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not defined for a boundary condition
/// (spectral solves accept only periodic and Neumann axes).
class UnsupportedBoundary : public Error {
 public:
  using Error::Error;
};

/// A spectral divisor or dense system is numerically singular.
class SingularCoefficient : public Error {
 public:
  using Error::Error;
};

/// A time lies outside the span covered by a parameter schedule.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration. `key()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace phasefield
