#pragma once

#include <stdexcept>
#include <string>

namespace owpt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-physical or inconsistent coil/layout geometry.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Filaments touch or coincide; the Neumann integrand is singular.
class SingularGeometry : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its subdivision budget before meeting tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Circuit configuration violates its invariants.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// The impedance matrix is numerically singular.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// A closed-form model was called outside the assumptions it was derived under.
class ModelDomainError : public Error {
 public:
  using Error::Error;
};

/// Closed-form input impedance divides by a zero coupling.
class UndefinedImpedance : public Error {
 public:
  using Error::Error;
};

/// Scenario file could not be read or failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File output failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace owpt
