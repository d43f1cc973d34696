#include "shrinker/profiles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace shrinker;

TEST_CASE("cylinder fixed point") {
  double root2 = std::sqrt(2.0);
  ProfileTrajectory traj = integrate_profile(root2, 20.0);
  REQUIRE(traj.outcome == ProfileTrajectory::Outcome::ok);
  for (const auto& s : traj.samples) {
    CHECK(std::abs(s.u - root2) <= 1e-9);
    CHECK(std::abs(s.du) <= 1e-9);
  }
  CHECK(profile_mean_curvature(traj) == doctest::Approx(1.0 / root2).epsilon(1e-9));
}

TEST_CASE("sphere arc validates the derived equation") {
  // u(z) = sqrt(4 - z^2) is the radius-2 sphere; it must satisfy the
  // right side exactly, and carry constant mean curvature 1.
  ProfileTrajectory arc;
  for (double z = -1.5; z <= 1.5; z += 1e-3) {
    double u = std::sqrt(4.0 - z * z);
    arc.samples.push_back({z, u, -z / u});
  }
  for (const auto& s : arc.samples) {
    double exact_upp = -4.0 / std::pow(4.0 - s.z * s.z, 1.5);
    CHECK(std::abs(profile_rhs(s.z, s.u, s.du) - exact_upp) <= 1e-8);
  }
  arc.u0 = 2.0;
  CHECK(profile_mean_curvature(arc) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("flat-start trajectory from u0 = 1") {
  ProfileTrajectory traj = integrate_profile(1.0, 40.0);
  REQUIRE(traj.outcome == ProfileTrajectory::Outcome::ok);
  CHECK(traj.sigma_estimate > 0.0);
  for (size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].z > traj.samples[i - 1].z);
    CHECK(traj.samples[i].u > 0.0);
    CHECK(traj.samples[i].du > traj.samples[i - 1].du - 1e-12);  // convex
    CHECK(traj.samples[i].du - traj.samples[i - 1].du < 1e-3);   // dense in u'
  }
  CHECK(traj.samples.front().du == doctest::Approx(0.0));
  CHECK(traj.samples.back().z == doctest::Approx(40.0).epsilon(1e-9));
}

TEST_CASE("step halving improves the mid-range state by at least 8x") {
  // Fourth-order check against a much finer reference, measured at z = 2
  // before the handoff to the cone asymptote (which is dt-insensitive).
  auto u_at = [](double dt) {
    ProfileTrajectory t = integrate_profile(1.0, 2.0, dt);
    return t.samples.back().u;
  };
  double ref = u_at(5e-4);
  double e1 = std::abs(u_at(1.6e-2) - ref);
  double e2 = std::abs(u_at(8e-3) - ref);
  CHECK(e2 <= e1 / 8.0);
}

TEST_CASE("pseudo-slope increases as the start height decreases") {
  double prev = -1.0;
  for (double u0 : {1.0, 0.5, 0.25, 0.1}) {
    ProfileTrajectory t = integrate_profile(u0, 40.0);
    REQUIRE(t.outcome == ProfileTrajectory::Outcome::ok);
    CHECK(t.sigma_estimate > prev);
    prev = t.sigma_estimate;
  }
}

TEST_CASE("asymptotically conical profile for sigma = 1") {
  ProfileTrajectory traj = shoot_for_sigma(1.0, 1e-3);
  double sigma = traj.sigma_estimate;
  CHECK(sigma == doctest::Approx(1.0));
  CHECK(traj.u0 < std::sqrt(2.0));
  CHECK(std::abs(traj.samples.back().du - 1.0) <= 1e-3);

  double prev_du = 0.0;
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i];
    CHECK(s.u > sigma * s.z);           // stays above its cone
    CHECK(s.du > 0.0);
    CHECK(s.du < sigma);
    if (i > 0) CHECK(s.du > prev_du);   // strict convexity
    prev_du = s.du;
  }

  // u(z_max/2) > sigma * z_max/2 specifically, and the cone gap decays
  // like 1/z: z |u - sigma z| stays bounded on [10, 40].
  for (const auto& s : traj.samples) {
    if (std::abs(s.z - 20.0) < 1e-3) CHECK(s.u > sigma * s.z);
    if (s.z >= 10.0) CHECK(s.z * std::abs(s.u - sigma * s.z) < 5.0);
  }

  CHECK(profile_mean_curvature(traj) > 0.0);
}

TEST_CASE("profile family ordering in sigma") {
  double prev_u0 = std::sqrt(2.0);
  for (double sigma : {0.25, 0.5, 1.0, 2.0}) {
    ProfileTrajectory t = shoot_for_sigma(sigma, 1e-3);
    CHECK(t.u0 < prev_u0);  // steeper cones start lower
    CHECK(t.u0 > 0.0);
    CHECK(profile_mean_curvature(t) > 0.0);
    prev_u0 = t.u0;
  }
}

TEST_CASE("argument guards") {
  CHECK_THROWS_AS(integrate_profile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_profile(2.0), std::invalid_argument);
  CHECK_THROWS_AS(shoot_for_sigma(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(shoot_for_sigma(1.0, -1e-3), std::range_error);
  CHECK_THROWS_AS(shoot_for_sigma(1.0, 1e-3, 5.0), std::range_error);
  ProfileTrajectory empty;
  CHECK_THROWS_AS(profile_mean_curvature(empty), std::invalid_argument);
}
