#pragma once

#include <stdexcept>
#include <string>

namespace shrinker {

inline const char* version() { return "0.1.0"; }

/// Tolerances and step-size policy shared by the integral/ODE evaluations.
struct QuadratureConfig {
  double abs_tol = 1e-10;      // absolute quadrature tolerance
  double singular_band = 1e-3; // exclusion band around removable singularities
  double ode_dt = 1e-3;        // one-step ODE integrator step
  int grid_size = 2048;        // discrete eigensolver / surface grid density

  void validate() const {
    if (abs_tol <= 0 || singular_band <= 0 || ode_dt <= 0 || grid_size <= 0)
      throw std::invalid_argument("QuadratureConfig: all fields must be positive");
  }
};

/// Numerical tolerance could not be met; carries the bound actually achieved.
class tolerance_error : public std::runtime_error {
 public:
  tolerance_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Gaussian tail outside the sampled box exceeds the admissible bound.
class truncation_error : public tolerance_error {
 public:
  using tolerance_error::tolerance_error;
};

/// Evaluation point too close to a coordinate-chart degeneracy.
class chart_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Region descriptor outside the supported closed enumeration.
class descriptor_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace shrinker
