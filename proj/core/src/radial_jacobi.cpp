#include "shrinker/radial_jacobi.hpp"

#include "shrinker/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace shrinker {

namespace {

// Reduction-of-order integrand e^{z^2/4} / (z^{lambda-1} (z^2 - 2 lambda)^2).
double integrand(int lambda, double z) {
  double f1 = z * z - 2.0 * lambda;
  return std::exp(z * z / 4.0) / (std::pow(z, lambda - 1) * f1 * f1);
}

// Taylor coefficients of A(u) = e^{(s0+u)^2/4} (s0+u)^{-(lambda-1)}
// (u+2 s0)^{-2} about u = 0, where s0 = sqrt(2 lambda).  The integrand is
// A(u)/u^2 and the linear coefficient vanishes identically (the singular
// point of the integrand is a regular point of the equation), so the local
// antiderivative carries no logarithm.
std::vector<double> local_series(int lambda, int order) {
  const double s0 = std::sqrt(2.0 * lambda);
  std::vector<double> logs(order + 1, 0.0);  // log A minus its constant term
  logs[1] = s0 / 2.0 - lambda / s0;          // identically zero
  if (order >= 2) logs[2] = 0.25 + (lambda - 1) / (2.0 * s0 * s0) + 1.0 / (4.0 * s0 * s0);
  for (int m = 3; m <= order; ++m) {
    double sign = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^{m-1}
    logs[m] = -sign * (lambda - 1) / (m * std::pow(s0, m)) -
              2.0 * sign / (m * std::pow(2.0 * s0, m));
  }
  std::vector<double> a(order + 1, 0.0);
  a[0] = 1.0;
  for (int j = 1; j <= order; ++j) {
    double acc = 0.0;
    for (int i = 1; i <= j; ++i) acc += i * logs[i] * a[j - i];
    a[j] = acc / j;
  }
  const double a0 = std::exp(lambda / 2.0) /
                    (std::pow(s0, lambda - 1) * 4.0 * s0 * s0);
  for (double& v : a) v *= a0;
  a[1] = 0.0;
  return a;
}

}  // namespace

struct PiecewiseRadialSolution::Impl {
  RadialCase family = RadialCase::axis;
  int lambda = 1;  // n-k (annular), 1 (axis), n (plane)

  // axis / annular branch data
  double s0 = 0.0;
  double band = 0.0;
  std::vector<double> a;  // local series of the regularized integrand
  double c_left = 0.0, c_right = 0.0;
  double matching_k = 0.0;
  double inner_anchor = 0.0, outer_anchor = 0.0;
  double abs_tol = 1e-10;

  // plane series data
  std::vector<Rational> coeffs;   // a_{2m}, m = 0..truncation
  std::vector<double> coeffs_d;

  // regularized tail of the local antiderivative of a0/u^2 + sum a_j u^{j-2}
  double tail(double h, double x0) const {
    double t = a[0] / x0;
    double hp = h, xp = x0;  // h^{j-1}, x0^{j-1}
    for (size_t j = 2; j < a.size(); ++j) {
      t += a[j] * (hp - xp) / (j - 1);
      hp *= h;
      xp *= x0;
    }
    return t;
  }

  double tail_derivative(double h) const {
    double t = 0.0, hp = 1.0;  // h^{j-2}
    for (size_t j = 2; j < a.size(); ++j) {
      t += a[j] * hp;
      hp *= h;
    }
    return t;
  }

  double band_value(double h) const {
    double c = (h < 0) ? c_left : c_right;
    double x0 = (h < 0) ? -band : band;
    return (2.0 * s0 + h) * h * (c + tail(h, x0)) - a[0] * (2.0 * s0 + h);
  }

  double band_derivative(double h) const {
    double c = (h < 0) ? c_left : c_right;
    double x0 = (h < 0) ? -band : band;
    return (2.0 * s0 + 2.0 * h) * (c + tail(h, x0)) +
           (2.0 * s0 + h) * h * tail_derivative(h) - a[0];
  }

  double outside_integral(double x) const {
    auto w = [this](double z) { return integrand(lambda, z); };
    auto signed_int = [&](double lo, double hi) {
      double sign = 1.0;
      if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
      }
      // The integrand blows up like e^{z^2/4} for large z, so the tolerance
      // is scaled by its peak to stay achievable in doubles.
      double tol = abs_tol * std::max({1.0, w(lo), w(hi)});
      return sign * integrate(w, lo, hi, tol);
    };
    if (x < s0) return signed_int(inner_anchor, x);
    return matching_k + signed_int(outer_anchor, x);
  }

  double plane_value(double r, bool derivative) const;
};

double PiecewiseRadialSolution::Impl::plane_value(double r, bool derivative) const {
  // Kahan-summed even power series with a geometric tail bound from the
  // coefficient ratio a_{m+1} r^2 / a_m = r^2 (2m-1) / (4(m+1)(lambda+2m)).
  const double r2 = r * r;
  double sum = 0.0, comp = 0.0, term = 0.0;
  for (size_t m = 0; m < coeffs_d.size(); ++m) {
    double power = std::pow(r, derivative ? (2.0 * m - 1.0) : 2.0 * m);
    if (m == 0) power = derivative ? 0.0 : 1.0;
    term = coeffs_d[m] * (derivative ? 2.0 * m : 1.0) * power;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double m_last = static_cast<double>(coeffs_d.size() - 1);
  const double q =
      r2 * (2.0 * m_last - 1.0) / (4.0 * (m_last + 1.0) * (lambda + 2.0 * m_last));
  const double floor_scale = std::max(1.0, std::abs(sum));
  if (q >= 0.9)
    throw truncation_error("plane series: insufficient truncation for radius", q);
  const double bound = std::abs(term) * q / (1.0 - q);
  if (bound > 1e-12 * floor_scale)
    throw truncation_error("plane series: insufficient truncation for radius", bound);
  return sum;
}

PiecewiseRadialSolution::PiecewiseRadialSolution(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

RadialCase PiecewiseRadialSolution::family() const { return impl_->family; }
int PiecewiseRadialSolution::lambda() const { return impl_->lambda; }

double PiecewiseRadialSolution::singular_point() const {
  if (impl_->family == RadialCase::plane)
    throw std::domain_error("plane series has no singular point");
  return impl_->s0;
}

double PiecewiseRadialSolution::limit_value() const {
  if (impl_->family == RadialCase::plane)
    throw std::domain_error("plane series has no singular point");
  return -2.0 * impl_->s0 * impl_->a[0];
}

double PiecewiseRadialSolution::matching_constant() const {
  if (impl_->family == RadialCase::plane)
    throw std::domain_error("plane series has no matching constant");
  return impl_->matching_k;
}

const std::vector<Rational>& PiecewiseRadialSolution::series_coefficients() const {
  if (impl_->family != RadialCase::plane)
    throw std::domain_error("series coefficients only exist for the plane case");
  return impl_->coeffs;
}

double PiecewiseRadialSolution::value(double x) const {
  const Impl& im = *impl_;
  if (im.family == RadialCase::plane) return im.plane_value(x, false);
  if (im.family == RadialCase::axis && x < 0) return -value(-x);
  if (im.family == RadialCase::annular && x <= 0)
    throw std::domain_error("annular solution is defined on (0, inf)");
  const double h = x - im.s0;
  if (std::abs(h) < im.band) return im.band_value(h);
  return (x * x - 2.0 * im.lambda) * im.outside_integral(x);
}

double PiecewiseRadialSolution::derivative(double x) const {
  const Impl& im = *impl_;
  if (im.family == RadialCase::plane) return im.plane_value(x, true);
  if (im.family == RadialCase::axis && x < 0) return derivative(-x);
  if (im.family == RadialCase::annular && x <= 0)
    throw std::domain_error("annular solution is defined on (0, inf)");
  const double h = x - im.s0;
  if (std::abs(h) < im.band) return im.band_derivative(h);
  return 2.0 * x * im.outside_integral(x) + integrand(im.lambda, x) *
         (x * x - 2.0 * im.lambda);
}

namespace {

std::shared_ptr<const PiecewiseRadialSolution::Impl> build_second_solution(
    RadialCase family, int lambda, double inner_anchor, double outer_anchor,
    const QuadratureConfig& config) {
  config.validate();
  auto impl = std::make_shared<PiecewiseRadialSolution::Impl>();
  impl->family = family;
  impl->lambda = lambda;
  impl->s0 = std::sqrt(2.0 * lambda);
  impl->band = std::max(0.25, config.singular_band);
  impl->a = local_series(lambda, 24);
  impl->abs_tol = config.abs_tol;
  impl->inner_anchor = inner_anchor;
  impl->outer_anchor = outer_anchor;

  auto w = [lambda](double z) { return integrand(lambda, z); };
  const double c = impl->band;
  impl->c_left = integrate(w, inner_anchor, impl->s0 - c, config.abs_tol);
  // The local antiderivative differences are h-independent, so C^1 matching
  // across the singular point reduces to one constant shift.
  impl->c_right = impl->c_left + impl->tail(0.0, -c) - impl->tail(0.0, c);
  impl->matching_k =
      impl->c_right + integrate(w, impl->s0 + c, impl->outer_anchor, config.abs_tol);
  return impl;
}

}  // namespace

PiecewiseRadialSolution build_g2(const QuadratureConfig& config) {
  return PiecewiseRadialSolution(
      build_second_solution(RadialCase::axis, 1, 0.0, 2.0, config));
}

PiecewiseRadialSolution build_f2(int lambda, const QuadratureConfig& config) {
  if (lambda < 2) throw std::invalid_argument("build_f2: need lambda = n-k >= 2");
  double s0 = std::sqrt(2.0 * lambda);
  return PiecewiseRadialSolution(
      build_second_solution(RadialCase::annular, lambda, 1.0, 2.0 * s0, config));
}

PiecewiseRadialSolution build_f1_series(int n, int truncation) {
  if (n < 2) throw std::invalid_argument("build_f1_series: need n >= 2");
  if (truncation < 2) throw std::invalid_argument("build_f1_series: truncation >= 2");
  auto impl = std::make_shared<PiecewiseRadialSolution::Impl>();
  impl->family = RadialCase::plane;
  impl->lambda = n;
  impl->coeffs.resize(truncation + 1);
  impl->coeffs[0] = -1;
  for (int m = 0; m < truncation; ++m)
    impl->coeffs[m + 1] =
        impl->coeffs[m] * (2 * m - 1) / (4 * (m + 1) * (n + 2 * m));
  impl->coeffs_d.reserve(impl->coeffs.size());
  for (const auto& q : impl->coeffs)
    impl->coeffs_d.push_back(static_cast<double>(q));
  return PiecewiseRadialSolution(impl);
}

double find_r1(int n) {
  const auto f1 = build_f1_series(n, 80);
  double lo = 1e-8, hi = 2.0 * std::sqrt(static_cast<double>(n));
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (f1(mid) < 0 ? lo : hi) = mid;
  }
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 4 && std::abs(f1(r)) > 1e-12; ++i)
    r -= f1(r) / f1.derivative(r);
  return r;
}

R1Approximations r1_approximations(int n) {
  const double nn = n;
  return {2.0 * std::sqrt(nn),
          2.0 * std::sqrt((nn + 2.0) * (std::sqrt((3.0 * nn + 2.0) / (nn + 2.0)) - 1.0))};
}

namespace {

std::vector<double> sign_change_roots(const PiecewiseRadialSolution& g2,
                                      double lo, double hi, double step) {
  std::vector<double> roots;
  double prev_x = lo, prev_v = g2(lo);
  for (double x = lo + step; x <= hi + 1e-12; x += step) {
    double v = g2(x);
    if (prev_v == 0.0 || prev_v * v < 0) {
      double a = prev_x, b = x, va = prev_v;
      while (b - a > 1e-7) {
        double m = 0.5 * (a + b), vm = g2(m);
        if (va * vm <= 0)
          b = m;
        else {
          a = m;
          va = vm;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_v = v;
  }
  return roots;
}

}  // namespace

double find_r0(const PiecewiseRadialSolution& g2) {
  auto roots = sign_change_roots(g2, std::sqrt(2.0) + 1e-4, 5.0, 0.01);
  if (roots.empty())
    throw tolerance_error("find_r0: no sign change of g2 on (sqrt 2, 5]", 0.0);
  // Newton polish past the 1e-7 bisection bracket so the residual itself
  // drops below 1e-9.
  double r = roots.front();
  for (int i = 0; i < 8 && std::abs(g2.value(r)) > 1e-9; ++i)
    r -= g2.value(r) / g2.derivative(r);
  return r;
}

double find_r0(const QuadratureConfig& config) { return find_r0(build_g2(config)); }

std::vector<double> g2_sign_changes(const PiecewiseRadialSolution& g2) {
  return sign_change_roots(g2, std::sqrt(2.0) + 1e-4, 10.0, 0.01);
}

namespace {

// Conjugate point test: integrate the radial equation from u(a) = 0,
// u'(a) = 1; an interior sign change of u means the Dirichlet ground state
// on (a, b) is negative.  nu = 1 is the coordinate (axis) reduction with no
// 1/r term when start < 0 is allowed.
bool has_interior_zero(double a, double b, int nu, double c0, double dt) {
  auto acc = [nu, c0](double r, double u, double du) {
    double p = -r / 2.0;
    if (nu > 1) p += (nu - 1) / r;
    return -p * du - c0 * u;
  };
  double u = 0.0, du = 1.0, r = a;
  const double guard = b - std::max(10.0 * dt, 1e-3 * (b - a));
  while (r < b - 1e-14) {
    double step = std::min(dt, b - r);
    double k1u = du, k1v = acc(r, u, du);
    double k2u = du + 0.5 * step * k1v, k2v = acc(r + 0.5 * step, u + 0.5 * step * k1u, du + 0.5 * step * k1v);
    double k3u = du + 0.5 * step * k2v, k3v = acc(r + 0.5 * step, u + 0.5 * step * k2u, du + 0.5 * step * k2v);
    double k4u = du + step * k3v, k4v = acc(r + step, u + step * k3u, du + step * k3v);
    u += step * (k1u + 2 * k2u + 2 * k3u + k4u) / 6.0;
    du += step * (k1v + 2 * k2v + 2 * k3v + k4v) / 6.0;
    r += step;
    if (r > a + 2.0 * dt && r < guard && u <= 0.0) return true;
  }
  return false;
}

}  // namespace

Stability classify_region(const ShrinkerSpec& spec, const Region& region,
                          const QuadratureConfig& config) {
  spec.validate();
  config.validate();
  const int nu = spec.n - spec.k;
  if (nu < 1)
    throw descriptor_error("classify_region: S^n has no Euclidean factor");

  const double root2 = std::sqrt(2.0);
  const double c0 = (spec.k >= 1) ? 1.0 : 0.5;

  // nu = 1 radial descriptors are symmetric pairs of coordinate regions.
  Region reg = region;
  if (nu == 1) {
    switch (reg.family) {
      case RegionFamily::ball:
        reg = {RegionFamily::slab, -reg.a, reg.a};
        break;
      case RegionFamily::annulus:
        if (!(reg.a >= 0 && reg.a < reg.b))
          throw descriptor_error("classify_region: need 0 <= a < b");
        break;
      case RegionFamily::exterior:
        reg = {RegionFamily::half_space_above, reg.a, 0.0};
        break;
      default:
        break;
    }
  }

  const bool coordinate = reg.family == RegionFamily::half_space_above ||
                          reg.family == RegionFamily::half_space_below ||
                          reg.family == RegionFamily::slab ||
                          (nu == 1 && reg.family == RegionFamily::annulus);
  const double crit = coordinate
                          ? (spec.k >= 1 ? root2 : 0.0)
                          : (spec.k >= 1 ? std::sqrt(2.0 * nu) : find_r1(spec.n));

  switch (reg.family) {
    case RegionFamily::half_space_above:
      return reg.a >= crit - 1e-12 ? Stability::stable : Stability::unstable;
    case RegionFamily::half_space_below:
      return reg.b <= -(crit - 1e-12) ? Stability::stable : Stability::unstable;
    case RegionFamily::ball:
      if (reg.a <= 0) throw descriptor_error("classify_region: need a > 0");
      return reg.a <= crit + 1e-12 ? Stability::stable : Stability::unstable;
    case RegionFamily::exterior:
      if (reg.a < 0) throw descriptor_error("classify_region: need a >= 0");
      return reg.a >= crit - 1e-12 ? Stability::stable : Stability::unstable;
    case RegionFamily::slab: {
      if (!(reg.a < reg.b)) throw descriptor_error("classify_region: need a < b");
      return has_interior_zero(reg.a, reg.b, 1, c0, config.ode_dt)
                 ? Stability::unstable
                 : Stability::stable;
    }
    case RegionFamily::annulus: {
      if (!(reg.a >= 0 && reg.a < reg.b))
        throw descriptor_error("classify_region: need 0 <= a < b");
      double a = std::max(reg.a, 1e-6);
      return has_interior_zero(a, reg.b, nu, c0, config.ode_dt)
                 ? Stability::unstable
                 : Stability::stable;
    }
  }
  throw descriptor_error("classify_region: unsupported region family");
}

namespace {

// Eigenvalue count below x for a symmetric tridiagonal matrix (diag d,
// off-diagonal e) via the Sturm sequence of LDL^T pivots.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                double x) {
  int count = 0;
  double q = d[0] - x;
  if (q < 0) ++count;
  for (size_t i = 1; i < d.size(); ++i) {
    double denom = (q == 0.0) ? 1e-300 : q;
    q = d[i] - x - e[i - 1] * e[i - 1] / denom;
    if (q < 0) ++count;
  }
  return count;
}

}  // namespace

DirichletGroundState dirichlet_ground_eigenvalue(const ShrinkerSpec& spec,
                                                 double a, double b,
                                                 int grid_size) {
  spec.validate();
  if (!(a < b)) throw std::invalid_argument("dirichlet: need a < b");
  if (grid_size < 64) throw std::invalid_argument("dirichlet: grid_size >= 64");
  const int nu = spec.n - spec.k;
  if (nu < 1) throw descriptor_error("dirichlet: S^n has no Euclidean factor");
  const double c0 = (spec.k >= 1) ? 1.0 : 0.5;

  DirichletGroundState out;
  if (nu >= 2 && a <= 0.0) {
    a = 1e-6;
    out.origin_shifted = true;
  }

  // -(rho u')' - c0 rho u = lambda rho u with rho = e^{-r^2/4} |r|^{nu-1},
  // symmetrized to an ordinary tridiagonal eigenproblem.
  const int N = grid_size;
  const double h = (b - a) / N;
  auto rho = [nu](double r) {
    return std::exp(-r * r / 4.0) * std::pow(std::abs(r), nu - 1);
  };
  std::vector<double> d(N - 1), e(N - 2);
  for (int i = 1; i < N; ++i) {
    double r = a + i * h;
    double rm = rho(r - 0.5 * h), rp = rho(r + 0.5 * h), rc = rho(r);
    d[i - 1] = (rm + rp) / (h * h * rc) - c0;
    if (i < N - 1) {
      double rnext = rho(r + h);
      e[i - 1] = -rp / (h * h * std::sqrt(rc * rnext));
    }
  }

  // Gershgorin bracket, then Sturm bisection for the smallest eigenvalue.
  double lo = d[0], hi = d[0];
  for (int i = 0; i < N - 1; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(e[i - 1]);
    if (i < N - 2) radius += std::abs(e[i]);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo));
       ++iter) {
    double mid = 0.5 * (lo + hi);
    (sturm_count(d, e, mid) >= 1 ? hi : lo) = mid;
  }
  out.eigenvalue = 0.5 * (lo + hi);
  return out;
}

Rational growth_ratio(int n, int m) {
  if (n < 2 || m < 1) throw std::invalid_argument("growth_ratio: n >= 2, m >= 1");
  BigInt num = 2 * m;
  for (int i = 2; i <= 2 * m - 2; ++i) num *= i;
  BigInt den = 1;
  for (int i = 2; i <= m; ++i) den *= i;
  for (int j = 0; j < m; ++j) den *= (n + 2 * j);
  return Rational(num, den);
}

}  // namespace shrinker
