#pragma once

// Second-order Butterworth sections applied forward-backward (zero phase),
// plus the overlapping sliding-window RMS used for surface scoring.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace walkability {

struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;  // normalized, a0 == 1

  static Biquad lowpass(double cutoff_hz, double fs_hz) {
    check(cutoff_hz, fs_hz);
    const double k = std::tan(kPiLocal * cutoff_hz / fs_hz);
    const double q = 1.0 / std::sqrt(2.0);
    const double norm = 1.0 / (1.0 + k / q + k * k);
    Biquad f;
    f.b0 = k * k * norm;
    f.b1 = 2.0 * f.b0;
    f.b2 = f.b0;
    f.a1 = 2.0 * (k * k - 1.0) * norm;
    f.a2 = (1.0 - k / q + k * k) * norm;
    return f;
  }

  static Biquad highpass(double cutoff_hz, double fs_hz) {
    check(cutoff_hz, fs_hz);
    const double k = std::tan(kPiLocal * cutoff_hz / fs_hz);
    const double q = 1.0 / std::sqrt(2.0);
    const double norm = 1.0 / (1.0 + k / q + k * k);
    Biquad f;
    f.b0 = norm;
    f.b1 = -2.0 * norm;
    f.b2 = norm;
    f.a1 = 2.0 * (k * k - 1.0) * norm;
    f.a2 = (1.0 - k / q + k * k) * norm;
    return f;
  }

  // |H(e^{j 2 pi f / fs})| for the single (one-way) pass.
  double magnitude_at(double f_hz, double fs_hz) const {
    const double w = 2.0 * kPiLocal * f_hz / fs_hz;
    const double c1 = std::cos(w), s1 = std::sin(w);
    const double c2 = std::cos(2 * w), s2 = std::sin(2 * w);
    const double nr = b0 + b1 * c1 + b2 * c2;
    const double ni = -(b1 * s1 + b2 * s2);
    const double dr = 1.0 + a1 * c1 + a2 * c2;
    const double di = -(a1 * s1 + a2 * s2);
    return std::sqrt((nr * nr + ni * ni) / (dr * dr + di * di));
  }

  double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }

 private:
  static constexpr double kPiLocal = 3.14159265358979323846;
  static void check(double cutoff_hz, double fs_hz) {
    if (cutoff_hz <= 0 || fs_hz <= 0 || cutoff_hz >= fs_hz / 2)
      throw std::invalid_argument("cutoff must lie in (0, fs/2)");
  }
};

namespace detail {

// One-way pass, transposed direct form II, with the initial state scaled so
// a step input starts settled (no startup transient on DC).
inline void lfilter_settled(const Biquad& f, std::span<const double> x,
                            std::vector<double>& y) {
  y.resize(x.size());
  if (x.empty()) return;
  const double h1 = f.dc_gain();
  double z1 = (h1 - f.b0) * x[0];
  double z2 = (f.b2 - f.a2 * h1) * x[0];
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double xn = x[n];
    const double yn = f.b0 * xn + z1;
    z1 = f.b1 * xn - f.a1 * yn + z2;
    z2 = f.b2 * xn - f.a2 * yn;
    y[n] = yn;
  }
}

}  // namespace detail

// Forward-backward (zero-phase) filtering with odd-reflection edge padding.
// The effective magnitude response is |H|^2.
inline std::vector<double> filtfilt(const Biquad& f, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const std::size_t padlen = std::min<std::size_t>(n - 1, 9);

  std::vector<double> ext;
  ext.reserve(n + 2 * padlen);
  for (std::size_t i = padlen; i >= 1; --i) ext.push_back(2 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= padlen; ++i)
    ext.push_back(2 * x[n - 1] - x[n - 1 - i]);

  std::vector<double> fwd, bwd;
  detail::lfilter_settled(f, ext, fwd);
  std::reverse(fwd.begin(), fwd.end());
  detail::lfilter_settled(f, fwd, bwd);
  std::reverse(bwd.begin(), bwd.end());

  return std::vector<double>(bwd.begin() + padlen, bwd.begin() + padlen + n);
}

struct RmsPoint {
  double t = 0.0;    // window center
  double rms = 0.0;
};

// Overlapping sliding-window RMS over a (uniformly sampled) series. Windows
// are [start, start + window_s) advanced by step_s; windows without samples
// are skipped.
inline std::vector<RmsPoint> sliding_rms(std::span<const double> t,
                                         std::span<const double> x,
                                         double window_s = 1.0,
                                         double step_s = 0.1) {
  if (t.size() != x.size()) throw std::invalid_argument("length mismatch");
  std::vector<RmsPoint> out;
  if (t.empty() || window_s <= 0 || step_s <= 0) return out;
  const double t0 = t.front();
  const double t_end = t.back();
  std::size_t lo = 0;
  for (std::size_t k = 0;; ++k) {
    const double start = t0 + k * step_s;
    if (start + window_s > t_end + 1e-9) break;
    while (lo < t.size() && t[lo] < start) ++lo;
    double sumsq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = lo; i < t.size() && t[i] < start + window_s; ++i) {
      sumsq += x[i] * x[i];
      ++count;
    }
    if (count == 0) continue;
    out.push_back({start + window_s / 2.0, std::sqrt(sumsq / count)});
  }
  return out;
}

}  // namespace walkability
