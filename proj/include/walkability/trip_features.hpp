#pragma once

// Robot trip features per segment traversal: kinematics, stops, speed drop,
// trip peak speed, and dataset-relative ratios.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "walkability/model.hpp"

namespace walkability {

struct TripFeatureBlock {
  std::optional<double> segment_duration_s;
  std::optional<double> segment_distance_m;
  std::optional<double> relative_duration;
  std::optional<double> relative_distance;
  std::optional<double> segment_max_speed;
  std::optional<double> segment_min_speed;
  std::optional<double> segment_avg_speed;
  std::optional<double> speed_drop_avg;
  std::optional<double> trip_peak_speed;
  std::optional<int> num_stops;
  std::optional<double> total_wait_time_s;
};

struct Kinematics {
  double t_seg = 0.0;
  double d_seg = 0.0;
  double v_max = 0.0;
  double v_min = 0.0;
  double v_avg = 0.0;
};

namespace detail {

inline double trapezoid(std::span<const VelSample> v) {
  double area = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i)
    area += 0.5 * (v[i].v_mps + v[i - 1].v_mps) * (v[i].t - v[i - 1].t);
  return area;
}

}  // namespace detail

// Needs at least two velocity samples in the window; otherwise the feature
// block stays incomplete.
inline std::optional<Kinematics> compute_kinematics(const SegmentTraversal& trav) {
  const auto& v = trav.records.vel;
  if (v.size() < 2) return std::nullopt;
  Kinematics k;
  k.t_seg = trav.duration_s();
  if (k.t_seg <= 0) return std::nullopt;
  k.d_seg = detail::trapezoid(v);
  k.v_max = v[0].v_mps;
  k.v_min = v[0].v_mps;
  for (const auto& s : v) {
    k.v_max = std::max(k.v_max, s.v_mps);
    k.v_min = std::min(k.v_min, s.v_mps);
  }
  k.v_avg = k.d_seg / k.t_seg;
  return k;
}

// Highest speed recorded anywhere in the trip (not per segment).
inline std::optional<double> compute_trip_peak(const TripLog& trip) {
  if (trip.ch.vel.empty()) return std::nullopt;
  double peak = trip.ch.vel.front().v_mps;
  for (const auto& s : trip.ch.vel) peak = std::max(peak, s.v_mps);
  return peak;
}

struct StopConfig {
  double speed_threshold_mps = 0.05;
  double min_dwell_s = 1.0;
};

struct Stops {
  int n_stops = 0;
  double wait_s = 0.0;
};

// A stop is a maximal interval with v below the threshold lasting at least
// the dwell time. Interval ends are refined by linear threshold crossings so
// the measured duration does not depend on the sampling phase.
inline Stops compute_stops(const SegmentTraversal& trav,
                           const StopConfig& cfg = {}) {
  const auto& v = trav.records.vel;
  Stops out;
  if (v.empty()) return out;

  const double thr = cfg.speed_threshold_mps;
  std::optional<double> below_since;
  auto close_interval = [&](double t_end) {
    const double dur = t_end - *below_since;
    if (dur >= cfg.min_dwell_s) {
      ++out.n_stops;
      out.wait_s += dur;
    }
    below_since.reset();
  };

  if (v.front().v_mps < thr) below_since = v.front().t;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const bool was = v[i - 1].v_mps < thr;
    const bool is = v[i].v_mps < thr;
    if (was == is) continue;
    const double dv = v[i].v_mps - v[i - 1].v_mps;
    const double t_cross =
        dv == 0.0 ? v[i].t
                  : v[i - 1].t + (thr - v[i - 1].v_mps) / dv * (v[i].t - v[i - 1].t);
    if (!was && is) {
      below_since = t_cross;
    } else if (below_since) {
      close_interval(t_cross);
    }
  }
  if (below_since) close_interval(v.back().t);
  return out;
}

// Average deviation from the trip peak speed over the traversal, integrated
// with the trapezoid rule over irregular sample times.
inline std::optional<double> compute_speed_drop(const SegmentTraversal& trav,
                                                double v_peak) {
  const auto& v = trav.records.vel;
  if (v.size() < 2) return std::nullopt;
  for (const auto& s : v)
    if (s.v_mps > v_peak)
      throw std::invalid_argument(
          "inconsistent peak: sampled speed exceeds v_peak");
  const double span = v.back().t - v.front().t;
  if (span <= 0) return std::nullopt;
  double area = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i)
    area += 0.5 * ((v_peak - v[i].v_mps) + (v_peak - v[i - 1].v_mps)) *
            (v[i].t - v[i - 1].t);
  return area / span;
}

// Ratios against the dataset minimum; the minimizing entry gets exactly 1.0.
inline std::vector<std::optional<double>> relative_to_min(
    std::span<const std::optional<double>> values) {
  std::optional<double> min_v;
  for (const auto& v : values)
    if (v && (!min_v || *v < *min_v)) min_v = *v;
  std::vector<std::optional<double>> out(values.size());
  if (!min_v || *min_v <= 0) return out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i]) out[i] = *values[i] / *min_v;
  return out;
}

}  // namespace walkability
