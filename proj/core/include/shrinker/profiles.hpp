#pragma once

#include "shrinker/config.hpp"

#include <vector>

namespace shrinker {

/// A sampled solution of the rotationally-symmetric shrinker profile ODE
///   u'' = (1 + u'^2) (1/u - u/2 + z u'/2)
/// for the surface of revolution (u(z) cos a, u(z) sin a, z) in R^3.
struct ProfileTrajectory {
  struct Sample {
    double z, u, du;
  };
  enum class Outcome { ok, crash };  ///< crash: u reached the axis

  std::vector<Sample> samples;
  double u0 = 0.0;
  double sigma_estimate = 0.0;  ///< u'(z_max), the asymptotic slope
  Outcome outcome = Outcome::ok;
};

/// Right side of the profile equation (second derivative of u).
double profile_rhs(double z, double u, double du);

/// 4th-order integration from u(0) = u0, u'(0) = 0 up to z_max.  A profile
/// reaching the axis is returned as a tagged crash trajectory, not an error.
ProfileTrajectory integrate_profile(double u0, double z_max = 40.0,
                                    double dt = 1e-3);

/// The unique profile asymptotic to the cone u = sigma_target * z, obtained
/// by seeding the cone expansion at z_max and integrating backward (the
/// stable direction; flat-start forward trajectories turn vertical before
/// becoming conical).  The result has u(0) < sqrt 2, 0 < u' < sigma and
/// u'' > 0 throughout, and u > sigma z.  Throws std::range_error for a
/// non-positive tolerance or z_max < 10.
ProfileTrajectory shoot_for_sigma(double sigma_target, double tol = 1e-3,
                                  double z_max = 40.0, double dt = 1e-3);

/// Minimum over samples of the rotation-surface mean curvature
/// H = -u''/(1+u'^2)^{3/2} + 1/(u sqrt(1+u'^2))
/// (the cylinder u = sqrt 2 gives H = 1/sqrt 2).
double profile_mean_curvature(const ProfileTrajectory& trajectory);

}  // namespace shrinker
