#pragma once

// Pedestrian trajectory reconstruction and sidewalk utilization features:
// robot-frame detections to absolute tracks, sliding-window smoothing,
// per-track behavior metrics, and prism-based density estimation.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "walkability/geo.hpp"
#include "walkability/model.hpp"
#include "walkability/series.hpp"

namespace walkability {

struct PedConfig {
  double detection_range_m = 10.0;
  double corridor_buffer_m = 0.5;
  std::size_t min_track_points = 4;
  double min_track_span_s = 2.0;
  double smooth_window_s = 1.0;
  double smooth_tick_s = 0.5;
  double bearing_floor_m = 0.1;   // displacements below this get no bearing
  double turn_threshold_deg = 30.0;
  double detection_depth_m = 10.0;  // forward prism depth c
};

struct TrackPoint {
  double t = 0.0;
  double x = 0.0;  // absolute, local frame
  double y = 0.0;
  double dist_to_segment_m = 0.0;
  bool in_corridor = false;
};

struct SmoothedPoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct PedestrianTrack {
  std::string ped_id;
  std::vector<TrackPoint> pts;         // range-gated detections
  std::vector<SmoothedPoint> smoothed; // smoothing of the in-corridor points
  bool qualified = false;              // enough corridor points for metrics
};

// Mean of raw points within +-window/2 of each 0.5 s tick; ticks are
// anchored at the first point and empty ticks are omitted.
inline std::vector<SmoothedPoint> smooth_track(std::span<const TrackPoint> pts,
                                               double window_s = 1.0,
                                               double tick_s = 0.5) {
  std::vector<SmoothedPoint> out;
  if (pts.empty()) return out;
  const double t0 = pts.front().t;
  const double t1 = pts.back().t;
  const double half = window_s / 2.0;
  for (std::size_t k = 0;; ++k) {
    const double tick = t0 + static_cast<double>(k) * tick_s;
    if (tick > t1 + 1e-9) break;
    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (const TrackPoint& p : pts) {
      if (p.t < tick - half - 1e-12) continue;
      if (p.t > tick + half + 1e-12) break;
      sx += p.x;
      sy += p.y;
      ++n;
    }
    if (n == 0) continue;
    out.push_back({tick, sx / static_cast<double>(n), sy / static_cast<double>(n)});
  }
  return out;
}

// Reconstructs per-pedestrian absolute tracks for one traversal. Detections
// beyond the range gate are discarded; the corridor flag marks points inside
// the buffered segment polyline. Tracks keep their id ordering stable.
inline std::vector<PedestrianTrack> build_tracks(const SegmentTraversal& trav,
                                                 const Segment& segment,
                                                 const LocalFrame& frame,
                                                 const PedConfig& cfg = {}) {
  std::vector<PedestrianTrack> tracks;
  const auto& ped = trav.records.ped;
  const auto& gnss = trav.records.gnss;
  const auto& vel = trav.records.vel;
  if (ped.empty() || gnss.empty() || vel.empty()) return tracks;

  const double corridor = segment.nominal_width_m / 2.0 + cfg.corridor_buffer_m;

  std::map<std::string, std::size_t> index;
  for (const PedSample& d : ped) {
    const double range = std::hypot(d.x_m, d.y_m);
    if (range > cfg.detection_range_m) continue;

    const Vec2 robot = interp_position_local(gnss, frame, d.t);
    const Vec2 fwd = interp_heading_dir(vel, d.t);
    const Vec2 left{-fwd.y, fwd.x};
    const Vec2 abs = robot + d.x_m * fwd + d.y_m * left;

    const PolylineProjection proj = segment.local.project(abs);
    TrackPoint p;
    p.t = d.t;
    p.x = abs.x;
    p.y = abs.y;
    p.dist_to_segment_m = proj.dist_m;
    p.in_corridor = proj.dist_m <= corridor;

    auto [it, fresh] = index.emplace(d.ped_id, tracks.size());
    if (fresh) {
      tracks.push_back({});
      tracks.back().ped_id = d.ped_id;
    }
    tracks[it->second].pts.push_back(p);
  }

  for (PedestrianTrack& tr : tracks) {
    std::vector<TrackPoint> corridor_pts;
    for (const TrackPoint& p : tr.pts)
      if (p.in_corridor) corridor_pts.push_back(p);
    if (corridor_pts.size() >= cfg.min_track_points &&
        corridor_pts.back().t - corridor_pts.front().t >= cfg.min_track_span_s) {
      tr.qualified = true;
      tr.smoothed = smooth_track(corridor_pts, cfg.smooth_window_s, cfg.smooth_tick_s);
    } else if (!corridor_pts.empty()) {
      tr.smoothed = smooth_track(corridor_pts, cfg.smooth_window_s, cfg.smooth_tick_s);
    }
  }
  return tracks;
}

struct TrackMetrics {
  double avg_speed_mps = 0.0;
  double speed_sd = 0.0;      // population sd of instantaneous speeds
  int n_turns = 0;
  double path_deviation_m = 0.0;
};

// Behavior metrics over a smoothed track: instantaneous speeds, bearing
// turns above the threshold, and mean perpendicular deviation from the
// start-end chord.
inline std::optional<TrackMetrics> track_metrics(
    std::span<const SmoothedPoint> pts, const PedConfig& cfg = {}) {
  if (pts.size() < 3) return std::nullopt;

  bool degenerate = true;
  for (const auto& p : pts)
    if (p.x != pts.front().x || p.y != pts.front().y) {
      degenerate = false;
      break;
    }
  if (degenerate) return TrackMetrics{};

  TrackMetrics m;
  std::vector<double> speeds;
  double total_dist = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double dt = pts[i].t - pts[i - 1].t;
    const double d = std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
    total_dist += d;
    if (dt > 0) speeds.push_back(d / dt);
  }
  const double span = pts.back().t - pts.front().t;
  if (span <= 0 || speeds.empty()) return std::nullopt;
  m.avg_speed_mps = total_dist / span;

  double sm = 0.0;
  for (double v : speeds) sm += v;
  sm /= static_cast<double>(speeds.size());
  double ss = 0.0;
  for (double v : speeds) ss += (v - sm) * (v - sm);
  m.speed_sd = std::sqrt(ss / static_cast<double>(speeds.size()));

  std::vector<double> bearings;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double dx = pts[i].x - pts[i - 1].x;
    const double dy = pts[i].y - pts[i - 1].y;
    if (std::hypot(dx, dy) > cfg.bearing_floor_m)
      bearings.push_back(rad2deg(std::atan2(dy, dx)));
  }
  for (std::size_t i = 1; i < bearings.size(); ++i) {
    double diff = std::abs(bearings[i] - bearings[i - 1]);
    diff = std::min(diff, 360.0 - diff);
    if (diff > cfg.turn_threshold_deg) ++m.n_turns;
  }

  const double ex = pts.back().x - pts.front().x;
  const double ey = pts.back().y - pts.front().y;
  const double chord = std::hypot(ex, ey);
  if (chord > 1e-12) {
    double sum = 0.0;
    for (const auto& p : pts)
      sum += std::abs(ey * p.x - ex * p.y + pts.back().x * pts.front().y -
                      pts.back().y * pts.front().x) /
             chord;
    m.path_deviation_m = sum / static_cast<double>(pts.size());
  }
  return m;
}

struct PrismDensity {
  std::optional<double> k_max;  // peds/m^2
  std::optional<double> k_avg;  // peds/m^2
  int n_ped = 0;                // distinct corridor-filtered ids
  std::string diagnostic;
};

namespace detail {

inline std::optional<Vec2> track_position_at(
    std::span<const SmoothedPoint> pts, double t) {
  if (pts.empty()) return std::nullopt;
  if (t < pts.front().t - 1e-9 || t > pts.back().t + 1e-9) return std::nullopt;
  if (pts.size() == 1)
    return std::abs(t - pts.front().t) <= 1e-9
               ? std::optional<Vec2>(Vec2{pts.front().x, pts.front().y})
               : std::nullopt;
  auto it = std::lower_bound(
      pts.begin(), pts.end(), t,
      [](const SmoothedPoint& p, double tv) { return p.t < tv; });
  if (it == pts.begin()) return Vec2{it->x, it->y};
  if (it == pts.end()) return Vec2{pts.back().x, pts.back().y};
  const SmoothedPoint& b = *it;
  const SmoothedPoint& a = *(it - 1);
  if (b.t <= a.t) return Vec2{a.x, a.y};
  const double w = (t - a.t) / (b.t - a.t);
  return Vec2{a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
}

// Time when the interpolated path first reaches arc length target_s.
inline std::optional<double> time_at_s(const std::vector<PathPoint>& path,
                                       double target_s, int direction) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double s0 = path[i - 1].s_m;
    const double s1 = path[i].s_m;
    const bool crossed = direction > 0 ? (s0 <= target_s && s1 >= target_s)
                                       : (s0 >= target_s && s1 <= target_s);
    if (!crossed || s0 == s1) continue;
    const double w = (target_s - s0) / (s1 - s0);
    return path[i - 1].t + w * (path[i].t - path[i - 1].t);
  }
  return std::nullopt;
}

}  // namespace detail

// Edie-style density over the moving detection prism: the corridor slice c
// meters ahead of the robot, width b, tracked at the smoothing tick until
// the robot reaches c meters before the segment end.
inline PrismDensity prism_density(const SegmentTraversal& trav,
                                  const std::vector<PedestrianTrack>& tracks,
                                  const Segment& segment,
                                  const PedConfig& cfg = {}) {
  PrismDensity out;
  std::set<std::string> corridor_ids;
  for (const auto& tr : tracks)
    for (const auto& p : tr.pts)
      if (p.in_corridor) {
        corridor_ids.insert(tr.ped_id);
        break;
      }
  out.n_ped = static_cast<int>(corridor_ids.size());

  const double b = segment.nominal_width_m;
  const double c = cfg.detection_depth_m;
  const double length = segment.length_m;
  if (b <= 0) {
    out.diagnostic = "non-positive segment width";
    return out;
  }
  if (length <= c) {
    out.diagnostic = "segment shorter than detection depth";
    return out;
  }
  if (trav.path.size() < 2) {
    out.diagnostic = "path too short";
    return out;
  }

  const int dir = trav.direction();
  const double target_s = dir > 0 ? length - c : c;
  const auto t_stop = detail::time_at_s(trav.path, target_s, dir);
  if (!t_stop || *t_stop <= trav.t_enter) {
    out.diagnostic = "robot did not cover the detection depth";
    return out;
  }
  const double T = *t_stop - trav.t_enter;

  // Smoothing over all range-gated points (corridor filtering does not apply
  // inside the prism; the width test below handles geometry).
  std::vector<std::vector<SmoothedPoint>> smoothed_all;
  smoothed_all.reserve(tracks.size());
  for (const auto& tr : tracks)
    smoothed_all.push_back(
        smooth_track(tr.pts, cfg.smooth_window_s, cfg.smooth_tick_s));

  const double tick = cfg.smooth_tick_s;
  const std::size_t full_ticks = static_cast<std::size_t>(std::floor(T / tick + 1e-9));
  const double tail = T - static_cast<double>(full_ticks) * tick;

  std::vector<double> tau(tracks.size(), 0.0);
  double k_max = 0.0;
  for (std::size_t k = 0; k <= full_ticks; ++k) {
    const double weight = k < full_ticks ? tick : tail;
    if (weight <= 1e-9) break;
    const double t = trav.t_enter + static_cast<double>(k) * tick;
    const auto robot_s = trav.s_at(t);
    if (!robot_s) continue;
    const double lo = dir > 0 ? *robot_s : *robot_s - c;
    const double hi = dir > 0 ? *robot_s + c : *robot_s;
    int inside_count = 0;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      const auto pos = detail::track_position_at(smoothed_all[i], t);
      if (!pos) continue;
      const PolylineProjection proj = segment.local.project(*pos);
      const bool inside = proj.s_m >= lo && proj.s_m <= hi &&
                          std::abs(proj.d_m) <= b / 2.0 &&
                          proj.dist_m <= b / 2.0 + 1e-9;
      if (inside) {
        tau[i] += weight;
        ++inside_count;
      }
    }
    k_max = std::max(k_max, static_cast<double>(inside_count) / (b * c));
  }

  double tau_sum = 0.0;
  for (double x : tau) tau_sum += x;
  out.k_avg = tau_sum / (T * b * c);
  out.k_max = k_max;
  return out;
}

struct UtilizationFeatureBlock {
  std::optional<int> total_ped_count;
  std::optional<double> avg_ped_speed;
  std::optional<double> ped_speed_variation;
  std::optional<double> ped_turns;
  std::optional<double> ped_path_deviation;
  std::optional<double> max_ped_density;
  std::optional<double> avg_ped_density;
};

// Averages the per-track metrics over qualifying tracks and attaches the
// prism densities. No tracks: count 0, metric fields stay null, densities 0
// (when the prism itself is valid).
inline UtilizationFeatureBlock utilization_block(
    const SegmentTraversal& trav, const std::vector<PedestrianTrack>& tracks,
    const Segment& segment, const PedConfig& cfg = {}) {
  UtilizationFeatureBlock out;
  const PrismDensity density = prism_density(trav, tracks, segment, cfg);
  out.total_ped_count = density.n_ped;
  out.max_ped_density = density.k_max;
  out.avg_ped_density = density.k_avg;

  double sum_v = 0.0, sum_sd = 0.0, sum_turns = 0.0, sum_dev = 0.0;
  std::size_t n = 0;
  for (const auto& tr : tracks) {
    if (!tr.qualified) continue;
    const auto m = track_metrics(tr.smoothed, cfg);
    if (!m) continue;
    sum_v += m->avg_speed_mps;
    sum_sd += m->speed_sd;
    sum_turns += m->n_turns;
    sum_dev += m->path_deviation_m;
    ++n;
  }
  if (n > 0) {
    const double dn = static_cast<double>(n);
    out.avg_ped_speed = sum_v / dn;
    out.ped_speed_variation = sum_sd / dn;
    out.ped_turns = sum_turns / dn;
    out.ped_path_deviation = sum_dev / dn;
  }
  return out;
}

}  // namespace walkability
