#pragma once

// Small numeric-statistics toolbox: moments, interpolated percentiles, and
// the regularized incomplete beta function backing t/F tail probabilities.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace walkability {

inline double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of empty range");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// ddof = 0 population, 1 sample.
inline double variance(std::span<const double> v, int ddof = 1) {
  if (v.size() <= static_cast<std::size_t>(ddof))
    throw std::invalid_argument("variance needs more values");
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - ddof);
}

inline double stddev(std::span<const double> v, int ddof = 1) {
  return std::sqrt(variance(v, ddof));
}

// Linear-interpolation percentile (the numpy default), q in [0, 1].
inline double percentile(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("percentile of empty range");
  q = std::clamp(q, 0.0, 1.0);
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  if (lo == hi) return v[lo];
  const double w = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - w) + v[hi] * w;
}

namespace detail {

// Continued fraction for the incomplete beta function (Lentz's method).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-14;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double ibeta(double a, double b, double x) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("ibeta: a, b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
  return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

// One-sided survival function of Student's t: P(T > t) with dof degrees of
// freedom.
inline double student_t_sf(double t, double dof) {
  if (dof <= 0) throw std::invalid_argument("t sf: dof must be > 0");
  if (!std::isfinite(t)) return t > 0 ? 0.0 : 1.0;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * ibeta(dof / 2.0, 0.5, x);
  return t >= 0.0 ? tail : 1.0 - tail;
}

inline double student_t_p_two_sided(double t, double dof) {
  return std::min(1.0, 2.0 * student_t_sf(std::abs(t), dof));
}

// P(F > f) for an F distribution with (d1, d2) degrees of freedom.
inline double fisher_f_sf(double f, double d1, double d2) {
  if (d1 <= 0 || d2 <= 0) throw std::invalid_argument("F sf: bad dof");
  if (f <= 0) return 1.0;
  return ibeta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

}  // namespace walkability
