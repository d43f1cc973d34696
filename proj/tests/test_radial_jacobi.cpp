#include "shrinker/radial_jacobi.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace shrinker;

namespace {

// Closed-form plane series coefficient a_{2m} = m (2m-2)! / (2^{3m-1} (m!)^2
// prod_{j<m} (n+2j)) as an exact rational.
Rational closed_form_coefficient(int n, int m) {
  BigInt num = m, den = 1;
  for (BigInt i = 2; i <= 2 * m - 2; ++i) num *= i;
  for (BigInt i = 2; i <= m; ++i) den *= i * i;
  den <<= 3 * m - 1;
  for (int j = 0; j < m; ++j) den *= n + 2 * j;
  return Rational(num, den);
}

// Second derivative from the solution's first derivatives, Richardson
// extrapolated so the h^2 truncation term drops out; keeps the residual
// check independent of the solution's internal machinery.
double second_derivative(const PiecewiseRadialSolution& s, double x, double h) {
  auto d = [&](double hh) {
    return (s.derivative(x + hh) - s.derivative(x - hh)) / (2 * hh);
  };
  return (4.0 * d(h) - d(2.0 * h)) / 3.0;
}

double axis_residual(const PiecewiseRadialSolution& g, double x) {
  return second_derivative(g, x, 1e-4) - 0.5 * x * g.derivative(x) + g.value(x);
}

double annular_residual(const PiecewiseRadialSolution& f, double r) {
  double lam = f.lambda();
  return second_derivative(f, r, 1e-4) +
         ((lam - 1) / r - r / 2) * f.derivative(r) + f.value(r);
}

double plane_residual(const PiecewiseRadialSolution& f, double r, int n) {
  return second_derivative(f, r, 1e-4) + ((n - 1) / r - r / 2) * f.derivative(r) +
         0.5 * f.value(r);
}

}  // namespace

TEST_CASE("plane series coefficients: recurrence equals closed form exactly") {
  for (int n = 2; n <= 7; ++n) {
    auto f1 = build_f1_series(n);
    const auto& coeffs = f1.series_coefficients();
    CHECK(coeffs[0] == Rational(-1));
    for (int m = 1; m <= 10; ++m) CHECK(coeffs[m] == closed_form_coefficient(n, m));
  }
  auto f1 = build_f1_series(2);
  CHECK(f1.series_coefficients()[1] == Rational(1, 8));
  CHECK(f1.series_coefficients()[2] == Rational(1, 256));
  CHECK(f1.value(0.0) == doctest::Approx(-1.0));
}

TEST_CASE("axis solution g2") {
  auto g2 = build_g2();
  double root2 = std::sqrt(2.0);
  double limit = -0.5 * std::sqrt(std::exp(1.0) / 2.0);

  CHECK(g2.value(root2) == doctest::Approx(limit).epsilon(1e-10));
  CHECK(g2.value(-root2) == doctest::Approx(-limit).epsilon(1e-10));
  CHECK(g2.value(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g2.singular_point() == doctest::Approx(root2));
  CHECK(g2.limit_value() == doctest::Approx(limit));

  // Approach the singular point from both sides.
  for (double d : {1e-2, 1e-3, 1e-4})
    for (double sgn : {-1.0, 1.0})
      CHECK(std::abs(g2.value(root2 + sgn * d) - limit) < 2.0 * d + 1e-8);

  SUBCASE("odd symmetry at 1000 points") {
    for (int i = 1; i <= 1000; ++i) {
      double x = 6.0 * i / 1000.0;
      CHECK(g2.value(-x) == doctest::Approx(-g2.value(x)).epsilon(1e-12));
    }
  }

  SUBCASE("ODE residual outside the band") {
    for (double x = -6.0; x <= 6.0; x += 0.037) {
      if (std::abs(std::abs(x) - root2) < 0.3) continue;
      if (std::abs(x) < 1e-6) continue;
      double scale = std::max(1.0, std::abs(g2.value(x)));
      CHECK(std::abs(axis_residual(g2, x)) < 1e-6 * scale);
    }
  }

  SUBCASE("g1 = x^2 - 2 satisfies the same equation") {
    for (double x = -6.0; x <= 6.0; x += 0.1) {
      double resid = 2.0 - 0.5 * x * (2 * x) + (x * x - 2);
      CHECK(std::abs(resid) < 1e-12);
    }
  }
}

TEST_CASE("annular solution f2") {
  for (int lam : {2, 3, 4}) {
    auto f2 = build_f2(lam);
    double s0 = std::sqrt(2.0 * lam);
    double limit = -0.5 * std::pow(std::exp(1.0) / (2.0 * lam), lam / 2.0);

    CHECK(f2.lambda() == lam);
    CHECK(f2.singular_point() == doctest::Approx(s0));
    CHECK(f2.value(s0) == doctest::Approx(limit).epsilon(1e-10));
    for (double d : {1e-2, 1e-3, 1e-4})
      for (double sgn : {-1.0, 1.0})
        CHECK(std::abs(f2.value(s0 + sgn * d) - limit) < 2.0 * d + 1e-8);

    for (double r = 0.2; r <= 6.0; r += 0.023) {
      if (std::abs(r - s0) < 0.3) continue;
      double scale = std::max(1.0, std::abs(f2.value(r)));
      CHECK(std::abs(annular_residual(f2, r)) < 1e-6 * scale);
    }
  }
  CHECK(build_f2(2).value(2.0) ==
        doctest::Approx(-std::exp(1.0) / 8.0).epsilon(1e-9));
  CHECK(build_f2(3).value(std::sqrt(6.0)) ==
        doctest::Approx(-0.5 * std::pow(std::exp(1.0) / 6.0, 1.5)).epsilon(1e-9));
  CHECK_THROWS_AS(build_f2(1), std::invalid_argument);
}

TEST_CASE("f2 (lambda = 2) is strictly negative on (1, 2)") {
  // The anchor at r = 1 makes f2 vanish there and go positive on (0, 1), so
  // definite sign holds between the anchor and the sphere radius.
  auto f2 = build_f2(2);
  for (double r = 1.01; r < 2.0; r += 0.005) CHECK(f2.value(r) < 0.0);
}

TEST_CASE("plane series ODE residual on (0, 6]") {
  for (int n = 2; n <= 7; ++n) {
    auto f1 = build_f1_series(n);
    for (double r = 0.05; r <= 6.0; r += 0.017) {
      double scale = std::max(1.0, std::abs(f1.value(r)));
      CHECK(std::abs(plane_residual(f1, r, n)) < 1e-8 * scale);
    }
  }
}

TEST_CASE("r1 roots and their overestimates") {
  const double table[6] = {2.514, 3.004, 3.408, 3.760, 4.076, 4.364};
  for (int n = 2; n <= 7; ++n) {
    double r1 = find_r1(n);
    CHECK(std::abs(r1 - table[n - 2]) < 5e-4);
    CHECK(std::abs(build_f1_series(n).value(r1)) <= 1e-12);
    auto approx = r1_approximations(n);
    CHECK(approx.second_order == doctest::Approx(2 * std::sqrt(double(n))));
    CHECK(r1 < approx.fourth_order);
    CHECK(approx.fourth_order < approx.second_order);
  }
}

TEST_CASE("r0 and the sign changes of g2") {
  auto g2 = build_g2();
  double r0 = find_r0(g2);
  CHECK(std::abs(r0 - 3.00395) < 1e-3);
  CHECK(std::abs(g2.value(r0)) <= 1e-8);
  CHECK(r0 > std::sqrt(2.0));
  auto roots = g2_sign_changes(g2);
  REQUIRE(!roots.empty());
  CHECK(std::abs(roots.front() - r0) < 1e-5);
}

TEST_CASE("region classification") {
  ShrinkerSpec axis{2, 1};
  QuadratureConfig cfg;
  double root2 = std::sqrt(2.0);
  double r0 = find_r0();

  // Stable families.
  CHECK(classify_region(axis, {RegionFamily::slab, -root2, root2}) == Stability::stable);
  CHECK(classify_region(axis, {RegionFamily::half_space_above, root2}) == Stability::stable);
  CHECK(classify_region(axis, {RegionFamily::half_space_below, 0, -root2}) == Stability::stable);
  CHECK(classify_region(axis, {RegionFamily::slab, 0, r0}) == Stability::stable);
  CHECK(classify_region(axis, {RegionFamily::slab, -r0, 0}) == Stability::stable);

  ShrinkerSpec ann{3, 1};
  CHECK(classify_region(ann, {RegionFamily::exterior, 2.0}) == Stability::stable);
  CHECK(classify_region(ann, {RegionFamily::ball, 2.0}) == Stability::stable);

  // Unstable half-spaces below the threshold.
  for (double a : {0.0, 0.5, 1.0, 1.4})
    CHECK(classify_region(axis, {RegionFamily::half_space_above, a}) ==
          Stability::unstable);

  // The sqrt-2 split is sharp: widening the slab or lowering the half-space
  // breaks stability.
  CHECK(classify_region(axis, {RegionFamily::slab, -2.0, 2.0}) == Stability::unstable);
  CHECK(classify_region(axis, {RegionFamily::half_space_above, 1.0}) == Stability::unstable);

  // Same for the rotational split at sqrt(2(n-k)).
  CHECK(classify_region(ann, {RegionFamily::exterior, 1.5}) == Stability::unstable);
  CHECK(classify_region(ann, {RegionFamily::ball, 2.5}) == Stability::unstable);

  // Hyperplane: ball radius threshold is r1.
  ShrinkerSpec plane{3, 0};
  double r1 = find_r1(3);
  CHECK(classify_region(plane, {RegionFamily::ball, r1 - 0.05}) == Stability::stable);
  CHECK(classify_region(plane, {RegionFamily::ball, r1 + 0.05}) == Stability::unstable);
  CHECK(classify_region(plane, {RegionFamily::half_space_above, 0.0}) == Stability::stable);

  CHECK_THROWS_AS(classify_region({2, 2}, {RegionFamily::ball, 1.0}, cfg),
                  descriptor_error);
}

TEST_CASE("Dirichlet ground eigenvalue oracle") {
  ShrinkerSpec axis{2, 1};
  double root2 = std::sqrt(2.0);

  CHECK(std::abs(dirichlet_ground_eigenvalue(axis, -root2, root2).eigenvalue) < 2e-3);
  CHECK(std::abs(dirichlet_ground_eigenvalue(axis, 0, find_r0()).eigenvalue) < 2e-3);
  CHECK(dirichlet_ground_eigenvalue(axis, -2.0, 2.0).eigenvalue < -1e-3);

  SUBCASE("domain monotonicity on nested chains") {
    struct Chain {
      ShrinkerSpec spec;
      std::vector<std::pair<double, double>> intervals;
    };
    std::vector<Chain> chains = {
        {{2, 1}, {{-0.5, 0.5}, {-1.0, 1.0}, {-1.5, 1.5}, {-2.0, 2.0}}},
        {{2, 1}, {{0.2, 1.0}, {0.2, 2.0}, {0.1, 3.0}, {0.0, 4.0}}},
        {{3, 1}, {{1.0, 2.0}, {0.8, 2.5}, {0.6, 3.0}, {0.5, 4.0}}},
        {{3, 0}, {{0.5, 1.5}, {0.4, 2.0}, {0.3, 2.5}, {0.2, 3.0}}},
        {{4, 2}, {{1.0, 2.0}, {0.9, 2.4}, {0.8, 3.0}, {0.7, 3.5}}},
    };
    for (const auto& chain : chains) {
      double prev = std::numeric_limits<double>::infinity();
      for (auto [a, b] : chain.intervals) {
        double ev = dirichlet_ground_eigenvalue(chain.spec, a, b).eigenvalue;
        CHECK(ev < prev);
        prev = ev;
      }
    }
  }

  SUBCASE("origin shift is recorded for singular radial weights") {
    CHECK(dirichlet_ground_eigenvalue({4, 1}, 0.0, 2.0).origin_shifted);
    CHECK_FALSE(dirichlet_ground_eigenvalue({2, 1}, -1.0, 1.0).origin_shifted);
  }
}

TEST_CASE("coefficient growth ratio") {
  CHECK(growth_ratio(2, 1) == Rational(1));
  CHECK(growth_ratio(2, 2) == Rational(1, 2));
  CHECK(growth_ratio(2, 5) == Rational(7, 8));
  for (int n = 2; n <= 7; ++n) {
    bool diverged = false;
    for (int m = 1; m <= 60 && !diverged; ++m)
      diverged = growth_ratio(n, m) > 1000;
    CHECK(diverged);
  }
}

TEST_CASE("family accessor guards") {
  auto f1 = build_f1_series(2);
  CHECK(f1.family() == RadialCase::plane);
  CHECK_THROWS_AS(f1.singular_point(), std::domain_error);
  CHECK_THROWS_AS(f1.matching_constant(), std::domain_error);
  auto g2 = build_g2();
  CHECK(g2.family() == RadialCase::axis);
  CHECK_THROWS_AS(g2.series_coefficients(), std::domain_error);
}

TEST_CASE("series evaluation far outside the reliable radius is refused") {
  auto f1 = build_f1_series(2, 5);
  CHECK_THROWS_AS(f1.value(30.0), truncation_error);
}
