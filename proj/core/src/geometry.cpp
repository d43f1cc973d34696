#include "shrinker/geometry.hpp"

#include "shrinker/quadrature.hpp"

#include <cmath>

namespace shrinker {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

ParametricHypersurface ParametricHypersurface::sphere(double radius,
                                                      Vec3 center, int grid) {
  if (radius <= 0) throw std::invalid_argument("sphere: radius must be positive");
  ParametricHypersurface s;
  s.family_ = Family::sphere;
  s.param_ = radius;
  s.center_ = center;
  s.samples_.reserve(static_cast<size_t>(grid) * grid);
  const double dth = kPi / grid, dph = 2.0 * kPi / grid;
  for (int i = 0; i < grid; ++i) {
    double th = (i + 0.5) * dth;
    for (int j = 0; j < grid; ++j) {
      double ph = (j + 0.5) * dph;
      Vec3 n{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
             std::cos(th)};
      Vec3 p{center[0] + radius * n[0], center[1] + radius * n[1],
             center[2] + radius * n[2]};
      s.samples_.push_back(
          {p, n, 2.0 / radius, radius * radius * std::sin(th) * dth * dph});
    }
  }
  return s;
}

ParametricHypersurface ParametricHypersurface::cylinder(double half_width,
                                                        int grid) {
  ParametricHypersurface s;
  s.family_ = Family::cylinder;
  s.param_ = half_width;
  const double r = std::sqrt(2.0);
  const double dph = 2.0 * kPi / grid, dz = 2.0 * half_width / grid;
  s.samples_.reserve(static_cast<size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i) {
    double ph = (i + 0.5) * dph;
    Vec3 n{std::cos(ph), std::sin(ph), 0.0};
    for (int j = 0; j < grid; ++j) {
      double z = -half_width + (j + 0.5) * dz;
      s.samples_.push_back({{r * n[0], r * n[1], z}, n, 1.0 / r, r * dph * dz});
    }
  }
  return s;
}

ParametricHypersurface ParametricHypersurface::plane(double half_width,
                                                     int grid) {
  ParametricHypersurface s;
  s.family_ = Family::plane;
  s.param_ = half_width;
  const double d = 2.0 * half_width / grid;
  s.samples_.reserve(static_cast<size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      s.samples_.push_back({{-half_width + (i + 0.5) * d,
                             -half_width + (j + 0.5) * d, 0.0},
                            {0.0, 0.0, 1.0},
                            0.0,
                            d * d});
  return s;
}

double ParametricHypersurface::total_area() const {
  double area = 0.0;
  for (const auto& s : samples_) area += s.area_weight;
  return area;
}

double shrinker_residual(const ParametricHypersurface& surface) {
  double worst = 0.0;
  for (const auto& s : surface.samples()) {
    double xn = s.position[0] * s.normal[0] + s.position[1] * s.normal[1] +
                s.position[2] * s.normal[2];
    worst = std::max(worst, std::abs(s.mean_curvature - 0.5 * xn));
  }
  return worst;
}

FValue f_functional(const ParametricHypersurface& surface, Vec3 x0, double t0,
                    const QuadratureConfig& config) {
  if (t0 <= 0) throw std::invalid_argument("f_functional: t0 must be positive");
  config.validate();

  // Gaussian tail outside the truncated box of an unbounded factor; the
  // transverse factor is bounded by 1.
  double tail = 0.0;
  const double w = surface.parameter();
  if (surface.family() == ParametricHypersurface::Family::cylinder) {
    double d = w - std::abs(x0[2]);
    tail = d <= 0 ? 1.0
                  : 2.0 * kPi * std::sqrt(2.0) * 2.0 * std::sqrt(kPi * t0) *
                        std::erfc(d / (2.0 * std::sqrt(t0))) / (4.0 * kPi * t0);
  } else if (surface.family() == ParametricHypersurface::Family::plane) {
    double d = w - std::max(std::abs(x0[0]), std::abs(x0[1]));
    tail = d <= 0 ? 1.0 : 2.0 * std::erfc(d / (2.0 * std::sqrt(t0)));
  }
  if (tail > 1e-10)
    throw truncation_error("f_functional: Gaussian tail outside sampled box",
                           tail);

  double sum = 0.0;
  for (const auto& s : surface.samples()) {
    double dx = s.position[0] - x0[0], dy = s.position[1] - x0[1],
           dz = s.position[2] - x0[2];
    sum += std::exp(-(dx * dx + dy * dy + dz * dz) / (4.0 * t0)) *
           s.area_weight;
  }
  return {sum / (4.0 * kPi * t0), tail};
}

FlowState flow_sphere(int n, double r_init, double t_init, double dt,
                      double t_end, double r_floor) {
  if (n < 1 || r_init <= 0 || dt <= 0 || r_floor <= 0)
    throw std::invalid_argument("flow_sphere: bad parameters");
  FlowState flow;
  flow.dim = n;
  double t = t_init, r = r_init;
  flow.history.emplace_back(t, r);
  while (t < t_end - 1e-15) {
    double step = std::min(dt, t_end - t);
    // Closed-form look-ahead from the current state spots extinction before
    // the integrator steps across it.
    if (r * r - 2.0 * n * step <= r_floor * r_floor) {
      flow.clipped = true;
      break;
    }
    auto rhs = [n](double radius) { return -n / radius; };
    double k1 = rhs(r);
    double k2 = rhs(r + 0.5 * step * k1);
    double k3 = rhs(r + 0.5 * step * k2);
    double k4 = rhs(r + step * k3);
    r += step * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
    t += step;
    flow.history.emplace_back(t, r);
  }
  flow.extinction_estimate = t + r * r / (2.0 * n);
  return flow;
}

double flow_sphere_closed_form(int n, double r_init, double t_init, double t) {
  double sq = r_init * r_init - 2.0 * n * (t - t_init);
  if (sq < 0) throw std::domain_error("flow_sphere_closed_form: past extinction");
  return std::sqrt(sq);
}

double sphere_gaussian_density(int n, double rho, double offset, double t0,
                               double abs_tol) {
  if (n < 1 || rho <= 0 || t0 <= 0)
    throw std::invalid_argument("sphere_gaussian_density: bad parameters");
  const double c = std::abs(offset);
  // Slice S^n(rho) by the polar angle toward x0: the slice at angle th is an
  // S^(n-1) of radius rho sin(th) at squared distance rho^2 + c^2 - 2 rho c cos th.
  const double slice_area = 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
  double integral = integrate(
      [&](double th) {
        double d2 = rho * rho + c * c - 2.0 * rho * c * std::cos(th);
        return std::exp(-d2 / (4.0 * t0)) * std::pow(std::sin(th), n - 1);
      },
      0.0, kPi, abs_tol);
  return std::pow(4.0 * kPi * t0, -0.5 * n) * slice_area * std::pow(rho, n) *
         integral;
}

MonotonicityReport monotonicity_check(const FlowState& flow, double x0_offset,
                                      double t0, double tolerance) {
  MonotonicityReport report;
  for (const auto& [t, r] : flow.history) {
    if (t >= t0) break;
    report.samples.emplace_back(
        t, sphere_gaussian_density(flow.dim, r, x0_offset, t0 - t));
  }
  for (size_t i = 1; i < report.samples.size(); ++i)
    if (report.samples[i].second > report.samples[i - 1].second + tolerance)
      ++report.violations;
  return report;
}

}  // namespace shrinker
