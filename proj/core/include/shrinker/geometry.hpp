#pragma once

#include "shrinker/config.hpp"

#include <array>
#include <vector>

namespace shrinker {

using Vec3 = std::array<double, 3>;

/// A sampled closed-form hypersurface in R^3 with analytic mean curvature
/// and normal: a round sphere, the self-shrinking cylinder S^1(sqrt 2) x R,
/// or the flat plane through the origin.  The sampling is a product grid
/// with per-cell area weights including the metric factor.
class ParametricHypersurface {
 public:
  enum class Family { sphere, cylinder, plane };

  static ParametricHypersurface sphere(double radius, Vec3 center = {0, 0, 0},
                                       int grid = 512);
  /// S^1(sqrt 2) x R, axis along z, Euclidean factor truncated to
  /// [-half_width, half_width].
  static ParametricHypersurface cylinder(double half_width = 14.0,
                                         int grid = 512);
  /// The plane z = 0 truncated to [-half_width, half_width]^2.
  static ParametricHypersurface plane(double half_width = 14.0, int grid = 512);

  Family family() const { return family_; }
  double parameter() const { return param_; }  ///< radius or half-width
  Vec3 center() const { return center_; }

  struct Sample {
    Vec3 position;
    Vec3 normal;  ///< outward unit normal
    double mean_curvature;
    double area_weight;
  };
  const std::vector<Sample>& samples() const { return samples_; }
  double total_area() const;

 private:
  ParametricHypersurface() = default;
  Family family_ = Family::plane;
  double param_ = 0.0;
  Vec3 center_{0, 0, 0};
  std::vector<Sample> samples_;
};

/// max over the grid of |H - <x, n>/2|; zero (to 1e-12) exactly for the
/// calibrated self-shrinker families.
double shrinker_residual(const ParametricHypersurface& surface);

struct FValue {
  double value = 0.0;
  double tail_bound = 0.0;  ///< analytic Gaussian tail outside the box
  operator double() const { return value; }
};

/// Gaussian-weighted area functional
/// F_{x0,t0} = (4 pi t0)^{-n/2} \int exp(-|x-x0|^2/(4 t0)) dmu
/// over the sampled surface.  Throws truncation_error when the analytic
/// tail bound of an unbounded factor exceeds 1e-10.
FValue f_functional(const ParametricHypersurface& surface, Vec3 x0, double t0,
                    const QuadratureConfig& config = {});

/// The radius ODE of the round shrinking n-sphere, dr/dt = -n/r.
struct FlowState {
  int dim = 2;                ///< n, the hypersurface dimension
  std::vector<std::pair<double, double>> history;  ///< (t, radius), t increasing
  double extinction_estimate = 0.0;
  bool clipped = false;       ///< final step crossed the radius floor
};

/// 4th-order integration of dr/dt = -n/r from (t_init, r_init) up to t_end,
/// halting at the radius floor.  Closed form: r = sqrt(r_init^2 - 2n (t-t_init)).
FlowState flow_sphere(int n, double r_init, double t_init, double dt,
                      double t_end = 0.0, double r_floor = 1e-3);

/// Closed-form companion radius for a history time.
double flow_sphere_closed_form(int n, double r_init, double t_init, double t);

/// Gaussian density (4 pi t0)^{-n/2} \int_{S^n(rho)+c} exp(-|x-x0|^2/(4 t0)) dmu
/// for a round n-sphere; reduces to a 1-D polar quadrature when |c-x0| > 0.
double sphere_gaussian_density(int n, double rho, double offset, double t0,
                               double abs_tol = 1e-10);

struct MonotonicityReport {
  std::vector<std::pair<double, double>> samples;  ///< (t, Gaussian integral)
  int violations = 0;  ///< increases beyond quadrature tolerance
};

/// Evaluates the monotone Gaussian integral on every history slice of a
/// sphere flow with effective time t0 - t; x0 enters through its distance
/// to the flow's center (origin).
MonotonicityReport monotonicity_check(const FlowState& flow, double x0_offset,
                                      double t0, double tolerance = 1e-8);

}  // namespace shrinker
