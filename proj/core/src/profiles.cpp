#include "shrinker/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace shrinker {

double profile_rhs(double z, double u, double du) {
  return (1.0 + du * du) * (1.0 / u - u / 2.0 + z * du / 2.0);
}

namespace {

// The linearization around any profile carries a mode growing like
// e^{(1+sigma^2) z^2/4}, so a forward double-precision trajectory is
// trustworthy only while that factor keeps amplified roundoff below ~1e-8.
constexpr double kTrustBudget = 73.7;  // 4 ln(1e8)

// Cone asymptote u = sigma z + a1/z + a3/z^3 obtained by matching powers in
// the profile equation: a1 = 1/sigma, a3 = -a1 (1/(1+sigma^2) + 1/(2 sigma^2)).
double asym_a3(double s) {
  return -(1.0 / s) * (1.0 / (1.0 + s * s) + 1.0 / (2.0 * s * s));
}

double asym_u(double s, double z) {
  return s * z + 1.0 / (s * z) + asym_a3(s) / (z * z * z);
}

double asym_du(double s, double z) {
  return s - 1.0 / (s * z * z) - 3.0 * asym_a3(s) / (z * z * z * z);
}

// Invert du = asym_du(sigma, z) for sigma at the handoff point.
double solve_sigma(double du, double z) {
  double s = std::max(du, 0.05);
  for (int i = 0; i < 60; ++i) {
    double g = asym_du(s, z) - du;
    double eps = 1e-7 * std::max(1.0, s);
    double dg = (asym_du(s + eps, z) - asym_du(s - eps, z)) / (2.0 * eps);
    double next = s - g / dg;
    if (!(next > 0)) next = s / 2.0;
    if (std::abs(next - s) < 1e-14 * std::max(1.0, s)) return next;
    s = next;
  }
  return s;
}

}  // namespace

ProfileTrajectory integrate_profile(double u0, double z_max, double dt) {
  if (!(u0 > 0.0) || u0 > std::sqrt(2.0) + 1e-12)
    throw std::invalid_argument("integrate_profile: u0 in (0, sqrt 2]");
  if (z_max <= 0 || dt <= 0)
    throw std::invalid_argument("integrate_profile: z_max, dt > 0");

  ProfileTrajectory traj;
  traj.u0 = u0;

  // The cylinder is the fixed point of the shooting family; one ulp off it
  // still departs within double precision, so it is pinned exactly.
  if (std::abs(u0 * u0 - 2.0) < 1e-14) {
    const double r = std::sqrt(2.0);
    for (double z = 0.0; z <= z_max + 1e-12; z += dt)
      traj.samples.push_back({z, r, 0.0});
    traj.sigma_estimate = 0.0;
    return traj;
  }

  double z = 0.0, u = u0, du = 0.0;
  traj.samples.push_back({z, u, du});
  long trusted = 0;  // index of the last sample inside the trust horizon
  bool crashed = false, blew_up = false;

  while (z < z_max - 1e-12) {
    // Local substep keeps consecutive slope increments below ~dt/2, so the
    // effective resolution keeps scaling with dt in the steep transition zone.
    double ddu = std::abs(profile_rhs(z, u, du));
    double step = std::min({dt, z_max - z, 0.5 * dt / std::max(ddu, 1.0)});
    double k1u = du, k1v = profile_rhs(z, u, du);
    double k2u = du + 0.5 * step * k1v,
           k2v = profile_rhs(z + 0.5 * step, u + 0.5 * step * k1u, k2u);
    double k3u = du + 0.5 * step * k2v,
           k3v = profile_rhs(z + 0.5 * step, u + 0.5 * step * k2u, k3u);
    double k4u = du + step * k3v,
           k4v = profile_rhs(z + step, u + step * k3u, k4u);
    double u_next = u + step * (k1u + 2 * k2u + 2 * k3u + k4u) / 6.0;
    double du_next = du + step * (k1v + 2 * k2v + 2 * k3v + k4v) / 6.0;
    if (!(u_next > 1e-3) || !std::isfinite(u_next) || !std::isfinite(du_next)) {
      crashed = true;
      break;
    }
    if (std::abs(du_next) > 1e3) {
      blew_up = true;
      break;
    }
    u = u_next;
    du = du_next;
    z += step;
    traj.samples.push_back({z, u, du});
    if (z * z * (1.0 + du * du) <= kTrustBudget && du > 0)
      trusted = static_cast<long>(traj.samples.size()) - 1;
  }

  const auto& snap = traj.samples[trusted];
  // The cone asymptote is usable once its correction term 1/(sigma z) is small
  // against sigma z, i.e. once the product z * u' at the handoff is O(1).
  const bool can_continue = snap.du > 1e-3 && snap.z * snap.du > 2.0;
  if (!can_continue) {
    if (crashed) {
      traj.outcome = ProfileTrajectory::Outcome::crash;
      return traj;
    }
    if (blew_up)
      throw std::runtime_error("integrate_profile: slope blow-up, step too small "
                               "to follow the trajectory");
    traj.sigma_estimate = du;
    return traj;
  }

  // Beyond the trust horizon the forward solution is dominated by amplified
  // roundoff; replace the tail with the cone asymptote matched to u' at the
  // handoff (value offset kept so the samples stay continuous).
  if (snap.z < z_max - 1e-12) {
    double sigma = solve_sigma(snap.du, snap.z);
    double offset = snap.u - asym_u(sigma, snap.z);
    double zt = snap.z;
    traj.samples.resize(trusted + 1);
    long steps = static_cast<long>(std::ceil((z_max - zt) / dt));
    for (long i = 1; i <= steps; ++i) {
      double zz = (i == steps) ? z_max : zt + i * dt;
      traj.samples.push_back(
          {zz, asym_u(sigma, zz) + offset, asym_du(sigma, zz)});
    }
  }
  traj.sigma_estimate = traj.samples.back().du;
  return traj;
}

ProfileTrajectory shoot_for_sigma(double sigma_target, double tol, double z_max,
                                  double dt) {
  if (sigma_target <= 0)
    throw std::invalid_argument("shoot_for_sigma: target slope must be positive");
  if (!(tol > 0) || z_max < 10.0)
    throw std::range_error("shoot_for_sigma: need tol > 0 and z_max >= 10");

  // Flat-start forward trajectories leave the graphical family before
  // reaching the cone (the asymptotically conical profile has positive slope
  // already at z = 0), so the profile is shot from the other end: seed the
  // cone asymptote at z_max and integrate backward, the direction in which
  // the e^{z^2/4} mode decays.
  const double s = sigma_target;
  // Seed far enough out that the dropped asymptote terms are below tol,
  // then integrate down; samples are only recorded from z_max inward.
  const double a3 = -(1.0 / s) * (1.0 / (1.0 + s * s) + 1.0 / (2.0 * s * s));
  const double z_seed = std::max(z_max, std::cbrt(std::abs(a3) / tol));
  double z = z_seed, u = asym_u(s, z_seed), du = asym_du(s, z_seed);
  ProfileTrajectory traj;
  while (z > z_max) {
    double step = std::min(dt, z - z_max);
    double k1u = du, k1v = profile_rhs(z, u, du);
    double k2u = du - 0.5 * step * k1v,
           k2v = profile_rhs(z - 0.5 * step, u - 0.5 * step * k1u, k2u);
    double k3u = du - 0.5 * step * k2v,
           k3v = profile_rhs(z - 0.5 * step, u - 0.5 * step * k2u, k3u);
    double k4u = du - step * k3v,
           k4v = profile_rhs(z - step, u - step * k3u, k4u);
    u -= step * (k1u + 2 * k2u + 2 * k3u + k4u) / 6.0;
    du -= step * (k1v + 2 * k2v + 2 * k3v + k4v) / 6.0;
    z -= step;
  }
  traj.samples.push_back({z, u, du});
  while (z > 1e-12) {
    double step = std::min(dt, z);
    double k1u = du, k1v = profile_rhs(z, u, du);
    double k2u = du - 0.5 * step * k1v,
           k2v = profile_rhs(z - 0.5 * step, u - 0.5 * step * k1u, k2u);
    double k3u = du - 0.5 * step * k2v,
           k3v = profile_rhs(z - 0.5 * step, u - 0.5 * step * k2u, k3u);
    double k4u = du - step * k3v,
           k4v = profile_rhs(z - step, u - step * k3u, k4u);
    u -= step * (k1u + 2 * k2u + 2 * k3u + k4u) / 6.0;
    du -= step * (k1v + 2 * k2v + 2 * k3v + k4v) / 6.0;
    z -= step;
    if (!(u > 0) || !std::isfinite(u))
      throw std::runtime_error("shoot_for_sigma: profile left the positive "
                               "graphical regime");
    traj.samples.push_back({z, u, du});
  }
  std::reverse(traj.samples.begin(), traj.samples.end());
  traj.u0 = traj.samples.front().u;
  traj.sigma_estimate = s;
  return traj;
}

double profile_mean_curvature(const ProfileTrajectory& trajectory) {
  if (trajectory.outcome == ProfileTrajectory::Outcome::crash)
    throw std::invalid_argument("profile_mean_curvature: crash trajectory");
  if (trajectory.samples.empty())
    throw std::invalid_argument("profile_mean_curvature: empty trajectory");
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& s : trajectory.samples) {
    double ddu = profile_rhs(s.z, s.u, s.du);
    double q = 1.0 + s.du * s.du;
    double h = -ddu / std::pow(q, 1.5) + 1.0 / (s.u * std::sqrt(q));
    worst = std::min(worst, h);
  }
  return worst;
}

}  // namespace shrinker
