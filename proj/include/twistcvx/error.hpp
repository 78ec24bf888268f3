#pragma once

#include <stdexcept>
#include <string>

namespace twistcvx {

/// Base of every error thrown by the library. `exit_code()` is the stable
/// process exit status the CLI maps the error to.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// Unsupported or inconsistent configuration (family, rank, twist list...).
class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// An argument violates an operation's precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Malformed or out-of-tolerance input data (e.g. a non-unitary matrix file).
class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// An enumeration exceeded its configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// Numerical failure: non-convergence, resolution-rate breach.
class NumericError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// A postcondition that the mathematics guarantees did not hold.
class InternalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

}  // namespace twistcvx
