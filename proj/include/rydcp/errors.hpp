#pragma once

#include <stdexcept>
#include <string>

namespace rydcp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantum state that violates its invariants, or whose effective quantum
/// number would be nonpositive.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Numerov integration diverged or produced non-finite values.
class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved_rel_error)
      : Error(what), achieved_(achieved_rel_error) {}
  double achieved_relative_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Two radial grids share too few points to form a matrix element.
class GridOverlapError : public Error {
 public:
  using Error::Error;
};

/// A transition channel with zero frequency fed to a polarizability.
class SingularChannel : public Error {
 public:
  using Error::Error;
};

/// Matsubara sum failed to meet its tail criterion within the term budget.
class MatsubaraNonConvergence : public Error {
 public:
  using Error::Error;
};

/// Bad input to an operation (domain violations not covered above).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or data file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rydcp
