#pragma once

#include "shrinker/config.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace shrinker {

/// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute
/// tolerance abs_tol.  Throws tolerance_error when the error estimate
/// does not meet the request.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10) {
  if (a == b) return 0.0;
  double error = 0.0;
  double scale = std::max(1.0, std::abs(b - a));
  double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, abs_tol / scale, &error);
  // Large integrands (the radial weights grow like e^{z^2/4}) can't meet an
  // absolute target in doubles; past that point a relative bound is the
  // honest acceptance criterion.
  if (error > 100 * abs_tol + 1e-6 * std::abs(value))
    throw tolerance_error("quadrature did not converge", error);
  return value;
}

}  // namespace shrinker
