#include "shrinker/spectrum.hpp"

#include "shrinker/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace shrinker {

double ShrinkerSpec::sphere_radius() const {
  if (k < 1) throw std::domain_error("sphere_radius: hyperplane has no sphere factor");
  return std::sqrt(2.0 * k);
}

namespace {

// All tuples of `parts` nonnegative integers summing to exactly `total`.
void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
  if (parts == 0) {
    if (total == 0) emit(cur);
    return;
  }
  if (parts == 1) {
    cur.push_back(total);
    emit(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, emit);
    cur.pop_back();
  }
}

long long floor_rational(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt fl = num / den;
  if (num < 0 && fl * den != num) fl -= 1;
  return fl.convert_to<long long>();
}

}  // namespace

std::vector<EigenvalueRecord> enumerate_spectrum(const ShrinkerSpec& spec,
                                                 const Rational& ceiling) {
  spec.validate();
  const int n = spec.n, k = spec.k;
  std::map<Rational, EigenvalueRecord> by_value;

  auto add = [&](const Rational& value, int m, const std::vector<int>& degs) {
    auto& rec = by_value[value];
    rec.value = value;
    rec.multiplicity += (k >= 1) ? harmonic_dim(k, m) : 1;
    rec.generators.push_back({m, degs});
  };

  if (k == 0) {
    // lambda = -1/2 + (sum k_i)/2, one eigenfunction per tuple.
    long long s_max = floor_rational(2 * ceiling + 1);
    std::vector<int> cur;
    for (long long s = 0; s <= s_max; ++s)
      compositions(static_cast<int>(s), n, cur, [&](const std::vector<int>& t) {
        add(Rational(s - 1, 2), 0, t);
      });
  } else {
    // lambda = -1 + m(m+k-1)/(2k) + (sum c_i)/2; both nonnegative terms are
    // bounded by ceiling + 1 separately, which makes the sweep complete.
    long long s_max = std::max<long long>(-1, floor_rational(2 * (ceiling + 1)));
    for (int m = 0;; ++m) {
      Rational sphere_part = Rational(static_cast<long long>(m) * (m + k - 1), 2 * k);
      if (sphere_part > ceiling + 1) break;
      std::vector<int> cur;
      for (long long s = 0; s <= s_max; ++s) {
        Rational value = -1 + sphere_part + Rational(s, 2);
        if (value > ceiling) break;
        compositions(static_cast<int>(s), n - k, cur,
                     [&](const std::vector<int>& t) { add(value, m, t); });
      }
    }
  }

  std::vector<EigenvalueRecord> out;
  out.reserve(by_value.size());
  for (auto& [value, rec] : by_value) out.push_back(std::move(rec));
  return out;
}

long long stability_index(const ShrinkerSpec& spec) {
  spec.validate();
  long long count = 0;
  for (const auto& rec : enumerate_spectrum(spec, Rational(0)))
    if (rec.value < 0) count += rec.multiplicity;
  return count;
}

namespace {

constexpr double kPoleGuard = 0.05;

// Laplace-Beltrami piece of L on the S^k factor in the hyperspherical chart
// theta_1..theta_k, scaled by 1/(2k).
double sphere_term(int k, const ScalarField& f, std::vector<double>& pt,
                   double h) {
  for (int i = 0; i + 1 < k; ++i)
    if (std::abs(std::sin(pt[i])) < kPoleGuard)
      throw chart_error("apply_L: sample too close to a sphere pole");

  double total = 0.0;
  double prefactor = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) {
      double s = std::sin(pt[j - 1]);
      prefactor /= s * s;
    }
    double c = pt[j];
    pt[j] = c + h;
    double fp = f(pt);
    pt[j] = c - h;
    double fm = f(pt);
    pt[j] = c;
    double f0 = f(pt);
    double d2 = (fp - 2 * f0 + fm) / (h * h);
    double d1 = (fp - fm) / (2 * h);
    int remaining = k - 1 - j;  // k - j in 1-based indexing
    double term = d2;
    if (remaining > 0) term += remaining * (std::cos(c) / std::sin(c)) * d1;
    total += prefactor * term;
  }
  return total / (2.0 * k);
}

// Flat drift-Laplacian piece on the Euclidean factor.
double euclidean_term(int count, int offset, const ScalarField& f,
                      std::vector<double>& pt, double h) {
  double total = 0.0;
  for (int j = 0; j < count; ++j) {
    double y = pt[offset + j];
    pt[offset + j] = y + h;
    double fp = f(pt);
    pt[offset + j] = y - h;
    double fm = f(pt);
    pt[offset + j] = y;
    double f0 = f(pt);
    total += (fp - 2 * f0 + fm) / (h * h) - 0.5 * y * (fp - fm) / (2 * h);
  }
  return total;
}

}  // namespace

double apply_L(const ShrinkerSpec& spec, const ScalarField& f,
               std::span<const double> point, double h) {
  spec.validate();
  const int n = spec.n, k = spec.k;
  if (static_cast<int>(point.size()) != n)
    throw std::invalid_argument("apply_L: point must have n coordinates");
  std::vector<double> pt(point.begin(), point.end());
  double zeroth = (k >= 1 ? 1.0 : 0.5) * f(pt);
  double result = zeroth + euclidean_term(n - k, k, f, pt, h);
  if (k >= 1) result += sphere_term(k, f, pt, h);
  return result;
}

namespace {

double halton(int index, int base) {
  double r = 0.0, f = 1.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

}  // namespace

double eigenfunction_residual(const ShrinkerSpec& spec,
                              const EigenvalueRecord& record, int sample_count,
                              double h) {
  spec.validate();
  const int n = spec.n, k = spec.k;
  if (n > 10) throw std::invalid_argument("eigenfunction_residual: n too large");

  const Generator* gen = nullptr;
  for (const auto& g : record.generators)
    if (k <= 1 || g.spherical_degree <= 1) {
      gen = &g;
      break;
    }
  if (!gen)
    throw std::domain_error(
        "eigenfunction_residual: generator not constructible (k >= 2 needs "
        "spherical degree <= 1)");

  std::vector<HermitePoly> factors;
  for (int d : gen->hermite_degrees) factors.push_back(hermite_half(d));
  const int m = gen->spherical_degree;

  ScalarField f = [&](std::span<const double> p) {
    double v = 1.0;
    if (k == 1)
      v = std::cos(m * p[0]);
    else if (k >= 2 && m == 1)
      v = std::cos(p[0]);
    for (size_t j = 0; j < factors.size(); ++j)
      v *= hermite_eval(factors[j], p[k + j]);
    return v;
  };

  const double lambda = static_cast<double>(record.value);
  double worst = 0.0;
  std::vector<double> pt(n);
  for (int s = 0; s < sample_count; ++s) {
    for (int d = 0; d < n; ++d) {
      double u = halton(s + 1, kHaltonBases[d]);
      pt[d] = (d < k) ? 0.3 + u * (3.14159265358979324 - 0.6) : -2.0 + 4.0 * u;
    }
    double residual = std::abs(apply_L(spec, f, pt, h) + lambda * f(pt));
    worst = std::max(worst, residual);
  }
  return worst;
}

}  // namespace shrinker
