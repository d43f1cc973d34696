#pragma once

#include "shrinker/config.hpp"
#include "shrinker/rational.hpp"
#include "shrinker/spectrum.hpp"

#include <memory>
#include <vector>

namespace shrinker {

/// Which radial reduction of the stability operator a solution belongs to:
///   axis    k = n-1   g'' - (x/2) g' + g = 0          on R
///   annular 1<=k<=n-2 f'' + ((L-1)/r - r/2) f' + f = 0 on (0,inf), L = n-k
///   plane   k = 0     f'' + ((n-1)/r - r/2) f' + f/2 = 0
enum class RadialCase { axis, annular, plane };

/// A branch-structured second solution of the radial Jacobi equation
/// (or the entire plane series solution).  The axis and annular cases carry
/// a removable singular point of the reduction-of-order integrand, a finite
/// limit value there, and the matching constant fixing C^1 continuity.
class PiecewiseRadialSolution {
 public:
  RadialCase family() const;
  int lambda() const;  ///< n-k (annular), n (plane), 1 (axis)

  double singular_point() const;    ///< sqrt(2), sqrt(2L); throws for plane
  double limit_value() const;       ///< finite value at the singular point
  double matching_constant() const; ///< K1 (axis) or K2 (annular); throws for plane

  double value(double x) const;
  double derivative(double x) const;
  double operator()(double x) const { return value(x); }

  /// Exact even-power coefficients a_0, a_2, ..., a_{2T} (plane case only).
  const std::vector<Rational>& series_coefficients() const;

  struct Impl;
  explicit PiecewiseRadialSolution(std::shared_ptr<const Impl> impl);

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Second axis-case solution g2: odd, g2(sqrt 2) = -sqrt(e/2)/2.
PiecewiseRadialSolution build_g2(const QuadratureConfig& config = {});

/// Second annular-case solution f2 on (0, inf) for lambda = n-k >= 2;
/// f2(sqrt(2 lambda)) = -((e/(2 lambda))^(lambda/2))/2.
PiecewiseRadialSolution build_f2(int lambda, const QuadratureConfig& config = {});

/// Plane series solution f1(r) = -1 + sum a_{2m} r^{2m} with exact rational
/// coefficients from the recurrence, cross-checked against the closed form.
PiecewiseRadialSolution build_f1_series(int n, int truncation = 80);

/// Unique positive root of the plane series f1, |f1(r1)| <= 1e-12.
double find_r1(int n);

/// Closed-form partial-sum overestimates of r1.
struct R1Approximations {
  double second_order;  ///< 2 sqrt(n)
  double fourth_order;  ///< 2 sqrt((n+2)(sqrt((3n+2)/(n+2)) - 1))
};
R1Approximations r1_approximations(int n);

/// Smallest positive root of g2, bracketed on (sqrt 2, 5] and bisected to
/// 1e-6.  Approximately 3.00395.
double find_r0(const PiecewiseRadialSolution& g2);
double find_r0(const QuadratureConfig& config = {});

/// All sign changes of g2 on (sqrt 2, 10], reported rather than asserting
/// uniqueness of r0.
std::vector<double> g2_sign_changes(const PiecewiseRadialSolution& g2);

/// Symbolic region descriptors with classification ground truth.
enum class RegionFamily {
  half_space_above,  ///< { x_n > a }
  half_space_below,  ///< { x_n < b }
  slab,              ///< { a < x_n < b }
  ball,              ///< { |x| < a }
  annulus,           ///< { a < |x| < b }
  exterior           ///< { |x| > a }
};

struct Region {
  RegionFamily family;
  double a = 0.0;
  double b = 0.0;
};

enum class Stability { stable, unstable };

/// Stable iff some combination of the radial fundamental solutions is
/// strictly positive on the region.  Unbounded families are resolved by
/// root/limit analysis (roots sqrt 2, sqrt(2(n-k)), r0, r1); bounded slabs
/// and annuli by a disconjugacy integration of the radial equation.
Stability classify_region(const ShrinkerSpec& spec, const Region& region,
                          const QuadratureConfig& config = {});

struct DirichletGroundState {
  double eigenvalue = 0.0;
  bool origin_shifted = false;  ///< interval endpoint moved off r = 0
  operator double() const { return eigenvalue; }
};

/// Lowest Dirichlet eigenvalue of the radial operator on (a, b), from the
/// symmetric finite-difference discretization of the weighted form with
/// weight e^{-r^2/4} |r|^{n-k-1}.  Second-order convergent in the spacing.
DirichletGroundState dirichlet_ground_eigenvalue(const ShrinkerSpec& spec,
                                                 double a, double b,
                                                 int grid_size = 2048);

/// Exact coefficient growth ratio a_{2m}/b_{2m} against e^{r^2/8}:
/// 2m (2m-2)! / (m! prod_{j<m} (n+2j)).
Rational growth_ratio(int n, int m);

}  // namespace shrinker
