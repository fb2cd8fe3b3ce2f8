#pragma once

#include <stdexcept>
#include <string>

namespace qes {

/// Base class for every error raised by the solver.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an input value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// varpi^2 = omega^2/4 + Omega*omega is not positive, so no bound state decays at infinity.
class NonConfiningChannel : public Error {
 public:
  using Error::Error;
};

/// No truncation root has the sign required by the Coulomb coupling.
class NoAdmissibleRoot : public Error {
 public:
  using Error::Error;
};

/// A Frobenius coefficient left the representable range.
class SeriesOverflow : public Error {
 public:
  SeriesOverflow(int index, const std::string& what)
      : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// An iterative estimate (series tail, quadrature) did not meet its tolerance.
class NotConverged : public Error {
 public:
  NotConverged(double discrepancy, const std::string& what)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

/// Sturm counting could not isolate an eigenvalue.
class BracketFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range configuration data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qes
