#pragma once

#include "shrinker/config.hpp"
#include "shrinker/rational.hpp"

#include <functional>
#include <span>
#include <vector>

namespace shrinker {

/// The generalized cylinder S^k x R^(n-k) in R^(n+1); k = 0 denotes the
/// flat hyperplane R^n.  The sphere factor has radius sqrt(2k).
struct ShrinkerSpec {
  int n = 2;
  int k = 1;

  void validate() const {
    if (n < 1 || k < 0 || k > n)
      throw std::invalid_argument("ShrinkerSpec: need n >= 1 and 0 <= k <= n");
  }
  double sphere_radius() const;  // sqrt(2k); throws for k = 0
};

/// One generating eigenfunction family: spherical degree m together with a
/// Hermite multi-degree on the n-k Euclidean coordinates.
struct Generator {
  int spherical_degree = 0;
  std::vector<int> hermite_degrees;
};

struct EigenvalueRecord {
  Rational value;
  long long multiplicity = 0;
  std::vector<Generator> generators;
};

/// All distinct eigenvalues of the stability operator up to `ceiling`,
/// sorted ascending, with total multiplicities aggregated over generators.
/// Exact rational arithmetic throughout.
std::vector<EigenvalueRecord> enumerate_spectrum(const ShrinkerSpec& spec,
                                                 const Rational& ceiling);

/// Count with multiplicity of the strictly negative eigenvalues:
/// 1 for the hyperplane, n+2 for every S^k x R^(n-k) with k >= 1.
long long stability_index(const ShrinkerSpec& spec);

/// A scalar field in product parameter coordinates: k sphere angles
/// (hyperspherical chart, polar angles first) followed by n-k Euclidean
/// coordinates.
using ScalarField = std::function<double(std::span<const double>)>;

/// Central finite-difference evaluation of the stability operator
/// Lf = Delta f - <x, grad f>/2 + (|A|^2 + 1/2) f at a parameter point.
/// Second-order accurate in h.  Throws chart_error near sphere poles.
double apply_L(const ShrinkerSpec& spec, const ScalarField& f,
               std::span<const double> point, double h = 1e-3);

/// Max of |L f + lambda f| over a deterministic low-discrepancy sample for
/// one explicit generator eigenfunction of the record.  Throws
/// std::domain_error when no generator is explicitly constructible
/// (k >= 2 with m >= 2).
double eigenfunction_residual(const ShrinkerSpec& spec,
                              const EigenvalueRecord& record,
                              int sample_count, double h = 1e-3);

}  // namespace shrinker
