#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

// Argument outside the mathematical domain of an operation (Im(tau) <= 0,
// r outside [0, 1), non-lattice j, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A truncated series could not reach the requested tolerance. Carries the
// bound that was actually achieved and, where meaningful, a suggested size.
class precision_error : public std::runtime_error {
 public:
  precision_error(const std::string& what, double achieved_bound, double suggested = 0.0)
      : std::runtime_error(what), achieved_bound_(achieved_bound), suggested_(suggested) {}

  double achieved_bound() const noexcept { return achieved_bound_; }
  // Suggested truncation parameter (terms or J_max) that would meet the tolerance; 0 if unknown.
  double suggested() const noexcept { return suggested_; }

 private:
  double achieved_bound_;
  double suggested_;
};

// Division by a quantity that vanishes within tolerance.
class degeneracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation at a coordinate singularity of a chart (e.g. cos(theta) = 0).
class coordinate_singularity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrator gave up: energy drift stayed above the acceptance bound after
// all permitted step halvings.
class step_rejected_error : public std::runtime_error {
 public:
  step_rejected_error(const std::string& what, double drift)
      : std::runtime_error(what), drift_(drift) {}
  double drift() const noexcept { return drift_; }

 private:
  double drift_;
};

}  // namespace mobius
