#pragma once

// Linear interpolation over time-stamped sensor series (clamped at the ends).

#include <algorithm>
#include <cmath>
#include <span>

#include "walkability/geo.hpp"
#include "walkability/model.hpp"

namespace walkability {

namespace detail {

template <class Sample, class Get>
double interp_scalar(std::span<const Sample> s, double t, Get get) {
  if (s.empty()) return 0.0;
  if (t <= s.front().t) return get(s.front());
  if (t >= s.back().t) return get(s.back());
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const Sample& a, double tv) { return a.t < tv; });
  const Sample& b = *it;
  const Sample& a = *(it - 1);
  if (b.t <= a.t) return get(a);
  const double w = (t - a.t) / (b.t - a.t);
  return get(a) * (1.0 - w) + get(b) * w;
}

}  // namespace detail

inline double interp_speed(std::span<const VelSample> v, double t) {
  return detail::interp_scalar(v, t, [](const VelSample& s) { return s.v_mps; });
}

// Unit forward direction in the local east/north frame. Compass headings are
// interpolated through their unit vectors to stay continuous across north.
inline Vec2 interp_heading_dir(std::span<const VelSample> v, double t) {
  auto fx = [](const VelSample& s) { return std::sin(deg2rad(s.heading_deg)); };
  auto fy = [](const VelSample& s) { return std::cos(deg2rad(s.heading_deg)); };
  Vec2 dir{detail::interp_scalar(v, t, fx), detail::interp_scalar(v, t, fy)};
  const double n = norm(dir);
  return n > 1e-9 ? Vec2{dir.x / n, dir.y / n} : Vec2{0.0, 1.0};
}

inline Vec2 interp_position_local(std::span<const GnssSample> g,
                                  const LocalFrame& frame, double t) {
  auto px = [&frame](const GnssSample& s) {
    return frame.to_local({s.lat, s.lon}).x;
  };
  auto py = [&frame](const GnssSample& s) {
    return frame.to_local({s.lat, s.lon}).y;
  };
  return {detail::interp_scalar(g, t, px), detail::interp_scalar(g, t, py)};
}

}  // namespace walkability
