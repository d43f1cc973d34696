#include "shrinker/hermite.hpp"

#include <stdexcept>

namespace shrinker {

HermitePoly hermite_half(int k, int cap) {
  if (k < 0) throw std::invalid_argument("hermite_half: degree must be >= 0");
  if (k > cap) throw std::length_error("hermite_half: degree cap exceeded");

  // H_{k+1}(x/2) = x H_k(x/2) - 2k H_{k-1}(x/2)
  std::vector<BigInt> prev{1};      // H_0
  std::vector<BigInt> cur{0, 1};    // H_1 = x
  if (k == 0) return {0, prev};
  if (k == 1) return {1, cur};
  for (int d = 1; d < k; ++d) {
    std::vector<BigInt> next(d + 2, 0);
    for (int j = 0; j <= d; ++j) next[j + 1] += cur[j];
    for (int j = 0; j < d; ++j) next[j] -= 2 * d * prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {k, cur};
}

double hermite_eval(const HermitePoly& p, double x) {
  double acc = 0.0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
    acc = acc * x + static_cast<double>(*it);
  return acc;
}

double hermite_eval_derivative(const HermitePoly& p, double x) {
  double acc = 0.0;
  for (int j = static_cast<int>(p.coeffs.size()) - 1; j >= 1; --j)
    acc = acc * x + j * static_cast<double>(p.coeffs[j]);
  return acc;
}

long long harmonic_dim(int k, int m) {
  if (k < 1) throw std::domain_error("harmonic_dim: need k >= 1 (no sphere factor)");
  if (m < 0) throw std::invalid_argument("harmonic_dim: degree must be >= 0");
  if (m == 0) return 1;
  if (m == 1) return k + 1;
  // C(k+m, k) - C(k+m-2, k), validated against the brute-force Laplacian
  // kernel oracle in the test suite.
  auto binom = [](int a, int b) {
    BigInt r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  BigInt dim = binom(k + m, k) - binom(k + m - 2, k);
  return dim.convert_to<long long>();
}

}  // namespace shrinker
