#pragma once

// Sidewalk condition features: the event-based irregularity pipeline
// (high-pass, sliding RMS, speed-normalized events, spatial clustering), the
// continuous unevenness index, slope, widths and lighting.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "walkability/filters.hpp"
#include "walkability/model.hpp"
#include "walkability/series.hpp"

namespace walkability {

struct SurfaceConfig {
  double highpass_cutoff_hz = 1.0;
  double lowpass_cutoff_hz = 3.0;
  double event_threshold = 0.35;  // window RMS of high-passed az, m/s^2
  double cluster_eps_m = 1.0;
  double velocity_floor_mps = 0.1;
  double rms_window_s = 1.0;
  double rms_step_s = 0.1;
  double min_cluster_extent_m = 0.5;
  double min_moving_fraction = 0.5;  // required share of samples with v >= floor
};

struct FilteredAz {
  std::vector<double> t;
  std::vector<double> value;
  double fs_hz = 0.0;
  std::string diagnostic;
  bool ok() const { return diagnostic.empty() && !value.empty(); }
};

namespace detail {

inline double median_dt(std::span<const ImuSample> s) {
  std::vector<double> dts;
  dts.reserve(s.size());
  for (std::size_t i = 1; i < s.size(); ++i) dts.push_back(s[i].t - s[i - 1].t);
  if (dts.empty()) return 0.0;
  std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
  return dts[dts.size() / 2];
}

inline FilteredAz filter_az(std::span<const ImuSample> az, double cutoff_hz,
                            bool high, bool detrend) {
  FilteredAz out;
  if (az.size() < 10) {
    out.diagnostic = "signal too short for filtering";
    return out;
  }
  const double dt = median_dt(az);
  if (dt <= 0) {
    out.diagnostic = "degenerate sample times";
    return out;
  }
  out.fs_hz = 1.0 / dt;
  if (out.fs_hz < 4.0 * cutoff_hz) {
    out.diagnostic = "sample rate below 4x cutoff";
    return out;
  }
  out.t.reserve(az.size());
  std::vector<double> x;
  x.reserve(az.size());
  for (const auto& s : az) {
    out.t.push_back(s.t);
    x.push_back(s.az_mps2);
  }
  if (detrend) {
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    for (double& v : x) v -= m;
  }
  const Biquad f = high ? Biquad::highpass(cutoff_hz, out.fs_hz)
                        : Biquad::lowpass(cutoff_hz, out.fs_hz);
  out.value = filtfilt(f, x);
  return out;
}

}  // namespace detail

// Zero-phase high-pass of the vertical acceleration; removes gravity and
// pitch-trend components below the cutoff.
inline FilteredAz highpass_az(std::span<const ImuSample> az, double cutoff_hz) {
  return detail::filter_az(az, cutoff_hz, /*high=*/true, /*detrend=*/false);
}

// Zero-phase low-pass of the mean-removed vertical acceleration. The mean is
// removed first because the raw channel carries gravity, which would
// otherwise dominate every downstream RMS.
inline FilteredAz lowpass_az_detrended(std::span<const ImuSample> az,
                                       double cutoff_hz) {
  return detail::filter_az(az, cutoff_hz, /*high=*/false, /*detrend=*/true);
}

struct IrregularityEvent {
  std::string trip_id;
  std::string segment_id;
  double s_m = 0.0;        // along-segment position
  double value = 0.0;      // window RMS normalized by speed, (m/s^2)/(m/s)
  double t = 0.0;
  double window_rms = 0.0; // m/s^2
  double v_at = 0.0;       // m/s
};

// Windows above the threshold (while moving at least at the velocity floor)
// become events; consecutive above-threshold windows collapse into one event
// at their peak-RMS window.
inline std::vector<IrregularityEvent> detect_events(
    const SegmentTraversal& trav, double segment_length_m,
    std::span<const RmsPoint> rms, const SurfaceConfig& cfg = {}) {
  std::vector<IrregularityEvent> events;
  const auto& vel = trav.records.vel;
  if (vel.empty()) return events;

  std::optional<RmsPoint> peak;
  std::optional<double> peak_v;
  double last_t = 0.0;
  auto flush = [&]() {
    if (!peak) return;
    IrregularityEvent ev;
    ev.trip_id = trav.trip_id;
    ev.segment_id = trav.segment_id;
    ev.t = peak->t;
    ev.window_rms = peak->rms;
    ev.v_at = *peak_v;
    ev.value = peak->rms / std::max(*peak_v, cfg.velocity_floor_mps);
    const auto s = trav.s_at(peak->t);
    ev.s_m = std::clamp(s.value_or(0.0), 0.0, segment_length_m);
    events.push_back(std::move(ev));
    peak.reset();
    peak_v.reset();
  };

  for (const RmsPoint& p : rms) {
    const double v = interp_speed(vel, p.t);
    const bool above = p.rms > cfg.event_threshold && v >= cfg.velocity_floor_mps;
    const bool contiguous = peak && (p.t - last_t) <= cfg.rms_step_s + 1e-6;
    if (above) {
      if (peak && !contiguous) flush();
      if (!peak || p.rms > peak->rms) {
        peak = p;
        peak_v = v;
      }
    } else if (peak) {
      flush();
    }
    last_t = p.t;
  }
  flush();
  return events;
}

struct IrregularityCluster {
  std::string segment_id;
  double center_s_m = 0.0;
  double extent_L_m = 0.0;
  double mean_value = 0.0;
  std::size_t event_count = 0;
  std::set<std::string> trips;
};

// 1-D single-linkage clustering of one segment's events along s: a gap
// larger than eps_m starts a new cluster.
inline std::vector<IrregularityCluster> cluster_events(
    std::vector<IrregularityEvent> events, double eps_m = 1.0,
    double min_extent_m = 0.5) {
  std::vector<IrregularityCluster> clusters;
  if (events.empty()) return clusters;
  std::sort(events.begin(), events.end(),
            [](const IrregularityEvent& a, const IrregularityEvent& b) {
              return a.s_m < b.s_m;
            });
  std::size_t start = 0;
  auto emit = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
    IrregularityCluster c;
    c.segment_id = events[lo].segment_id;
    double sum_s = 0.0, sum_v = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      sum_s += events[i].s_m;
      sum_v += events[i].value;
      c.trips.insert(events[i].trip_id);
    }
    c.event_count = hi - lo;
    c.center_s_m = sum_s / static_cast<double>(c.event_count);
    c.extent_L_m = std::max(events[hi - 1].s_m - events[lo].s_m, min_extent_m);
    c.mean_value = sum_v / static_cast<double>(c.event_count);
    clusters.push_back(std::move(c));
  };
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].s_m - events[i - 1].s_m > eps_m) {
      emit(start, i);
      start = i;
    }
  }
  emit(start, events.size());
  return clusters;
}

// Length-weighted sum of cluster values; zero for an empty set.
inline double irregularity_index(std::span<const IrregularityCluster> clusters) {
  double sum = 0.0;
  for (const auto& c : clusters) sum += c.mean_value * c.extent_L_m;
  return sum;
}

// Per-traversal speed-normalized low-frequency RMS. Excluded (nullopt) when
// the robot is below the velocity floor for more than half of the samples.
inline std::optional<double> unevenness_rms(const SegmentTraversal& trav,
                                            const SurfaceConfig& cfg = {}) {
  const auto& az = trav.records.imu;
  const auto& vel = trav.records.vel;
  if (az.size() < 10 || vel.empty()) return std::nullopt;

  std::vector<double> v(az.size());
  std::size_t moving = 0;
  for (std::size_t i = 0; i < az.size(); ++i) {
    v[i] = interp_speed(vel, az[i].t);
    if (v[i] >= cfg.velocity_floor_mps) ++moving;
  }
  if (static_cast<double>(moving) <
      cfg.min_moving_fraction * static_cast<double>(az.size()))
    return std::nullopt;

  FilteredAz low = lowpass_az_detrended(az, cfg.lowpass_cutoff_hz);
  if (!low.ok()) return std::nullopt;

  double sumsq = 0.0;
  for (std::size_t i = 0; i < low.value.size(); ++i) {
    const double a_hat = low.value[i] / std::max(v[i], cfg.velocity_floor_mps);
    sumsq += a_hat * a_hat;
  }
  return std::sqrt(sumsq / static_cast<double>(low.value.size()));
}

// Altitude difference between traversal exit and entry over the segment
// length. Positive means uphill in the direction the robot drove.
inline std::optional<double> traversal_slope(const SegmentTraversal& trav,
                                             double segment_length_m) {
  const auto& g = trav.records.gnss;
  if (g.size() < 2 || segment_length_m <= 0) return std::nullopt;
  return (g.back().alt_m - g.front().alt_m) / segment_length_m;
}

struct WidthLight {
  std::optional<double> min_effective_width_m;
  std::optional<double> avg_effective_width_m;
  std::optional<double> lighting_condition;
};

inline WidthLight width_features(const SegmentTraversal& trav) {
  WidthLight out;
  const auto& w = trav.records.width;
  if (!w.empty()) {
    double lo = w.front().w_m, sum = 0.0;
    for (const auto& s : w) {
      lo = std::min(lo, s.w_m);
      sum += s.w_m;
    }
    out.min_effective_width_m = lo;
    out.avg_effective_width_m = sum / static_cast<double>(w.size());
  }
  const auto& l = trav.records.light;
  if (!l.empty()) {
    double sum = 0.0;
    for (const auto& s : l) sum += s.level;
    out.lighting_condition = sum / static_cast<double>(l.size());
  }
  return out;
}

struct ConditionFeatureBlock {
  std::optional<double> segment_length_m;
  std::optional<double> segment_width_m;
  std::optional<double> min_effective_width_m;
  std::optional<double> avg_effective_width_m;
  std::optional<double> segment_slope;
  std::optional<double> lighting_condition;
  std::optional<double> irregularity_index;
  std::optional<double> unevenness_index;
  std::optional<double> unevenness_index_norm;
};

}  // namespace walkability
