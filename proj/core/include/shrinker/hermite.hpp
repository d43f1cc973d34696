#pragma once

#include "shrinker/rational.hpp"

#include <vector>

namespace shrinker {

/// The half-argument Hermite polynomial H_k(x/2) with exact integer
/// coefficients in the monomial basis of x.  The leading coefficient is 1
/// and only monomials of degree congruent to k mod 2 appear.
struct HermitePoly {
  int degree = 0;
  std::vector<BigInt> coeffs;  // coeffs[j] multiplies x^j
};

inline constexpr int kHermiteDegreeCap = 64;

/// H_k(x/2) via the half-argument two-term recurrence
/// p_{k+1} = x p_k - 2k p_{k-1}.
HermitePoly hermite_half(int k, int cap = kHermiteDegreeCap);

/// Horner evaluation of H_k(x/2) at x.
double hermite_eval(const HermitePoly& p, double x);

/// d/dx H_k(x/2) at x.
double hermite_eval_derivative(const HermitePoly& p, double x);

/// Dimension of the space of harmonic homogeneous polynomials of degree m
/// in k+1 variables (the S^k spherical-harmonic multiplicity).
long long harmonic_dim(int k, int m);

}  // namespace shrinker
