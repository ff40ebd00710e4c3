#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace softgrip {

/// Input outside the mathematical domain of an operation (non-positive
/// stretch, radius outside the wall, negative distance, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed to converge or to bracket a root.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested pressure or aperture is not reachable. Carries the reachable
/// interval in the units of the request (kPa or mm).
class OutOfWorkspace : public std::runtime_error {
 public:
  OutOfWorkspace(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Bad measurement data or an ill-posed fit.
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No capacity calibration exists for the requested shape class.
class UncalibratedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration failed schema or invariant validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace softgrip
