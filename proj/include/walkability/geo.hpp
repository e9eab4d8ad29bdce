#pragma once

// Planar/spherical geometry helpers: haversine distances, a local
// equirectangular frame for meter-scale work, and polyline projection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace walkability {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

// Great-circle distance on the mean-radius sphere.
inline double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = deg2rad(a.lat);
  const double phi2 = deg2rad(b.lat);
  const double sp = std::sin((phi2 - phi1) / 2.0);
  const double sl = std::sin(deg2rad(b.lon - a.lon) / 2.0);
  const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

struct Vec2 {
  double x = 0.0;  // east, meters
  double y = 0.0;  // north, meters
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Equirectangular projection around a reference point. Accurate to well
// below the GNSS noise floor at campus scale; not meant for wide areas.
struct LocalFrame {
  GeoPoint origin;

  Vec2 to_local(const GeoPoint& p) const {
    const double x =
        deg2rad(p.lon - origin.lon) * kEarthRadiusM * std::cos(deg2rad(origin.lat));
    const double y = deg2rad(p.lat - origin.lat) * kEarthRadiusM;
    return {x, y};
  }

  GeoPoint to_geo(const Vec2& v) const {
    GeoPoint p;
    p.lat = origin.lat + rad2deg(v.y / kEarthRadiusM);
    p.lon = origin.lon +
            rad2deg(v.x / (kEarthRadiusM * std::cos(deg2rad(origin.lat))));
    return p;
  }
};

// Offset a geographic point by meters east/north.
inline GeoPoint offset_geo(const GeoPoint& origin, double east_m, double north_m) {
  return LocalFrame{origin}.to_geo({east_m, north_m});
}

struct PolylineProjection {
  double s_m = 0.0;     // arc length of the foot point
  double d_m = 0.0;     // signed cross-track offset, positive left of travel
  double dist_m = 0.0;  // unsigned distance from the query point to the foot
};

// Planar polyline with cached cumulative arc lengths.
class Polyline {
 public:
  Polyline() = default;

  explicit Polyline(std::vector<Vec2> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2)
      throw std::invalid_argument("polyline needs at least 2 points");
    cum_.resize(pts_.size(), 0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i)
      cum_[i] = cum_[i - 1] + norm(pts_[i] - pts_[i - 1]);
  }

  const std::vector<Vec2>& points() const { return pts_; }
  double length() const { return cum_.empty() ? 0.0 : cum_.back(); }

  Vec2 point_at(double s) const {
    const std::size_t i = edge_index(s);
    const double ds = s - cum_[i];
    const Vec2 u = unit(i);
    return pts_[i] + ds * u;
  }

  // Unit direction of travel on the edge containing arc length s.
  Vec2 direction_at(double s) const { return unit(edge_index(s)); }

  PolylineProjection project(Vec2 p) const {
    PolylineProjection best;
    best.dist_m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
      const Vec2 a = pts_[i];
      const Vec2 b = pts_[i + 1];
      const Vec2 ab = b - a;
      const double len2 = dot(ab, ab);
      double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const Vec2 foot = a + t * ab;
      const double dist = norm(p - foot);
      if (dist < best.dist_m) {
        const Vec2 u = unit(i);
        best.dist_m = dist;
        best.s_m = cum_[i] + t * std::sqrt(len2);
        best.d_m = cross(u, p - foot);
      }
    }
    return best;
  }

 private:
  std::size_t edge_index(double s) const {
    s = std::clamp(s, 0.0, length());
    std::size_t i =
        std::upper_bound(cum_.begin(), cum_.end(), s) - cum_.begin();
    if (i > 0) --i;
    return std::min(i, pts_.size() - 2);
  }

  Vec2 unit(std::size_t edge) const {
    const Vec2 ab = pts_[edge + 1] - pts_[edge];
    const double n = norm(ab);
    return n > 0.0 ? Vec2{ab.x / n, ab.y / n} : Vec2{1.0, 0.0};
  }

  std::vector<Vec2> pts_;
  std::vector<double> cum_;
};

}  // namespace walkability
