#pragma once

// Sidewalk network and trip data model: segment geometry, multi-channel
// sensor logs, GNSS-to-segment matching and traversal splitting.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "walkability/geo.hpp"

namespace walkability {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SegmentKind { sidewalk, crossing };

inline std::string to_string(SegmentKind k) {
  return k == SegmentKind::sidewalk ? "sidewalk" : "crossing";
}

inline SegmentKind segment_kind_from_string(const std::string& s) {
  if (s == "sidewalk") return SegmentKind::sidewalk;
  if (s == "crossing") return SegmentKind::crossing;
  throw ModelError("unknown segment kind: " + s);
}

struct Segment {
  std::string id;
  std::vector<GeoPoint> polyline;  // WGS84, ordered
  double length_m = 0.0;           // derived from the polyline when not given
  double nominal_width_m = 0.0;
  SegmentKind kind = SegmentKind::sidewalk;
  Polyline local;  // filled when the owning network is built

  double arc_length_m() const {
    double sum = 0.0;
    for (std::size_t i = 1; i < polyline.size(); ++i)
      sum += haversine_m(polyline[i - 1], polyline[i]);
    return sum;
  }
};

// ---------- sensor channels ----------

struct GnssSample {
  double t = 0.0;
  double lat = 0.0;
  double lon = 0.0;
  double alt_m = 0.0;
  bool operator==(const GnssSample&) const = default;
};

struct VelSample {
  double t = 0.0;
  double v_mps = 0.0;
  double heading_deg = 0.0;  // compass: 0 = north, clockwise positive
  bool operator==(const VelSample&) const = default;
};

struct ImuSample {
  double t = 0.0;
  double az_mps2 = 0.0;  // vertical acceleration, gravity included
  bool operator==(const ImuSample&) const = default;
};

struct WidthSample {
  double t = 0.0;
  double w_m = 0.0;  // effective width measured 2 m ahead
  bool operator==(const WidthSample&) const = default;
};

struct PedSample {
  double t = 0.0;
  std::string ped_id;
  double x_m = 0.0;  // robot frame: forward
  double y_m = 0.0;  // robot frame: left
  bool operator==(const PedSample&) const = default;
};

struct LightSample {
  double t = 0.0;
  double level = 0.0;  // unitless ambient brightness
  bool operator==(const LightSample&) const = default;
};

struct WeatherMeta {
  double temperature_c = 0.0;
  double wind_mps = 0.0;
  double pressure_hpa = 0.0;
  double precipitation_mm = 0.0;
  bool operator==(const WeatherMeta&) const = default;
};

struct Channels {
  std::vector<GnssSample> gnss;
  std::vector<VelSample> vel;
  std::vector<ImuSample> imu;
  std::vector<WidthSample> width;
  std::vector<PedSample> ped;
  std::vector<LightSample> light;
  bool operator==(const Channels&) const = default;

  std::size_t total() const {
    return gnss.size() + vel.size() + imu.size() + width.size() + ped.size() +
           light.size();
  }

  // Records with t in [t0, t1].
  Channels slice(double t0, double t1) const {
    Channels out;
    auto copy_range = [t0, t1](const auto& src, auto& dst) {
      for (const auto& r : src)
        if (r.t >= t0 && r.t <= t1) dst.push_back(r);
    };
    copy_range(gnss, out.gnss);
    copy_range(vel, out.vel);
    copy_range(imu, out.imu);
    copy_range(width, out.width);
    copy_range(ped, out.ped);
    copy_range(light, out.light);
    return out;
  }
};

struct TripLog {
  std::string trip_id;
  double start_time = 0.0;  // epoch seconds of the earliest record
  Channels ch;
  std::optional<WeatherMeta> meta;
  bool operator==(const TripLog&) const = default;
};

// ---------- network ----------

class SidewalkNetwork {
 public:
  explicit SidewalkNetwork(std::vector<Segment> segments)
      : segments_(std::move(segments)) {
    if (segments_.empty()) throw ModelError("network has no segments");
    validate_and_finish();
  }

  const std::vector<Segment>& segments() const { return segments_; }
  const LocalFrame& frame() const { return frame_; }

  const Segment* find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &segments_[it->second];
  }

  const Segment& segment(const std::string& id) const {
    const Segment* s = find(id);
    if (!s) throw ModelError("unknown segment: " + id);
    return *s;
  }

  const std::set<std::pair<std::string, std::string>>& adjacency() const {
    return adjacency_;
  }

  bool adjacent(const std::string& a, const std::string& b) const {
    return adjacency_.count(a < b ? std::make_pair(a, b)
                                  : std::make_pair(b, a)) > 0;
  }

  bool in_padded_bbox(Vec2 p, double pad_m) const {
    return p.x >= min_.x - pad_m && p.x <= max_.x + pad_m &&
           p.y >= min_.y - pad_m && p.y <= max_.y + pad_m;
  }

 private:
  void validate_and_finish() {
    double lat_lo = 1e9, lat_hi = -1e9, lon_lo = 1e9, lon_hi = -1e9;
    for (const Segment& s : segments_) {
      if (s.polyline.size() < 2)
        throw ModelError("segment " + s.id + ": polyline has fewer than 2 points");
      if (s.nominal_width_m <= 0.0)
        throw ModelError("segment " + s.id + ": non-positive width");
      for (const GeoPoint& p : s.polyline) {
        lat_lo = std::min(lat_lo, p.lat);
        lat_hi = std::max(lat_hi, p.lat);
        lon_lo = std::min(lon_lo, p.lon);
        lon_hi = std::max(lon_hi, p.lon);
      }
    }
    frame_.origin = {0.5 * (lat_lo + lat_hi), 0.5 * (lon_lo + lon_hi)};

    for (std::size_t i = 0; i < segments_.size(); ++i) {
      Segment& s = segments_[i];
      if (!index_.emplace(s.id, i).second)
        throw ModelError("duplicate segment id: " + s.id);
      const double arc = s.arc_length_m();
      if (arc <= 0.0)
        throw ModelError("segment " + s.id + ": empty polyline (zero length)");
      if (s.length_m == 0.0) {
        s.length_m = arc;
      } else if (s.length_m <= 0.0 ||
                 std::abs(s.length_m - arc) > 0.01 * std::max(arc, 1e-9)) {
        throw ModelError("segment " + s.id +
                         ": declared length disagrees with polyline arc length");
      }
      std::vector<Vec2> local;
      local.reserve(s.polyline.size());
      for (const GeoPoint& p : s.polyline) local.push_back(frame_.to_local(p));
      s.local = Polyline(std::move(local));
    }

    min_ = {1e18, 1e18};
    max_ = {-1e18, -1e18};
    for (const Segment& s : segments_)
      for (const Vec2& p : s.local.points()) {
        min_.x = std::min(min_.x, p.x);
        min_.y = std::min(min_.y, p.y);
        max_.x = std::max(max_.x, p.x);
        max_.y = std::max(max_.y, p.y);
      }

    // Segments sharing an endpoint (within 1 m) are adjacent.
    for (std::size_t i = 0; i < segments_.size(); ++i)
      for (std::size_t j = i + 1; j < segments_.size(); ++j) {
        const auto ends = [](const Segment& s) {
          return std::array<GeoPoint, 2>{s.polyline.front(), s.polyline.back()};
        };
        bool touch = false;
        for (const GeoPoint& a : ends(segments_[i]))
          for (const GeoPoint& b : ends(segments_[j]))
            if (haversine_m(a, b) < 1.0) touch = true;
        if (touch) {
          auto key = segments_[i].id < segments_[j].id
                         ? std::make_pair(segments_[i].id, segments_[j].id)
                         : std::make_pair(segments_[j].id, segments_[i].id);
          adjacency_.insert(key);
        }
      }
  }

  std::vector<Segment> segments_;
  std::map<std::string, std::size_t> index_;
  std::set<std::pair<std::string, std::string>> adjacency_;
  LocalFrame frame_;
  Vec2 min_, max_;
};

// GeoJSON-style FeatureCollection: one LineString feature per segment with
// properties {id, kind, width_m, optional length_m}.
inline SidewalkNetwork load_network_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("features") ||
      !doc["features"].is_array())
    throw ModelError("network document is not a FeatureCollection");
  std::vector<Segment> segments;
  for (const auto& feature : doc["features"]) {
    Segment s;
    const auto& props = feature.value("properties", nlohmann::json::object());
    if (!props.contains("id") || !props["id"].is_string())
      throw ModelError("network feature without string id");
    s.id = props["id"].get<std::string>();
    s.kind = segment_kind_from_string(props.value("kind", "sidewalk"));
    if (!props.contains("width_m") || !props["width_m"].is_number())
      throw ModelError("segment " + s.id + ": missing width_m");
    s.nominal_width_m = props["width_m"].get<double>();
    s.length_m = props.value("length_m", 0.0);
    const auto& geom = feature.value("geometry", nlohmann::json::object());
    if (geom.value("type", "") != "LineString")
      throw ModelError("segment " + s.id + ": geometry is not a LineString");
    for (const auto& c : geom.value("coordinates", nlohmann::json::array())) {
      if (!c.is_array() || c.size() < 2)
        throw ModelError("segment " + s.id + ": bad coordinate");
      s.polyline.push_back({c[1].get<double>(), c[0].get<double>()});
    }
    if (s.polyline.empty())
      throw ModelError("segment " + s.id + ": empty polyline");
    segments.push_back(std::move(s));
  }
  return SidewalkNetwork(std::move(segments));
}

inline SidewalkNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open network file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("network file " + path + ": " + e.what());
  }
  return load_network_json(doc);
}

// ---------- map matching ----------

struct MatchConfig {
  double gate_m = 5.0;        // max distance from a segment to match at all
  double hysteresis_m = 1.0;  // a competitor must beat prev by this margin
};

struct MatchResult {
  std::string segment_id;
  double s_m = 0.0;
  double d_m = 0.0;
  double dist_m = 0.0;
};

inline std::optional<MatchResult> match_position(
    const SidewalkNetwork& net, const GeoPoint& fix,
    const std::optional<std::string>& prev = std::nullopt,
    const MatchConfig& cfg = {}) {
  const Vec2 p = net.frame().to_local(fix);
  if (!net.in_padded_bbox(p, 100.0)) return std::nullopt;

  std::optional<MatchResult> best;
  std::optional<MatchResult> prev_match;
  for (const Segment& s : net.segments()) {
    const PolylineProjection proj = s.local.project(p);
    if (prev && s.id == *prev)
      prev_match = MatchResult{s.id, proj.s_m, proj.d_m, proj.dist_m};
    if (proj.dist_m <= cfg.gate_m && (!best || proj.dist_m < best->dist_m))
      best = MatchResult{s.id, proj.s_m, proj.d_m, proj.dist_m};
  }
  if (prev_match && prev_match->dist_m <= cfg.gate_m) {
    if (!best || best->dist_m >= prev_match->dist_m - cfg.hysteresis_m)
      return prev_match;
  }
  return best;
}

// ---------- traversals ----------

struct PathPoint {
  double t = 0.0;
  double s_m = 0.0;
  double d_m = 0.0;
};

struct SegmentTraversal {
  std::string trip_id;
  std::string segment_id;
  double t_enter = 0.0;
  double t_exit = 0.0;
  Channels records;             // all sensor records within [t_enter, t_exit]
  std::vector<PathPoint> path;  // matched fixes, time-sorted

  double duration_s() const { return t_exit - t_enter; }

  // +1 when the robot drives toward increasing s, -1 otherwise.
  int direction() const {
    if (path.size() < 2) return 1;
    return path.back().s_m >= path.front().s_m ? 1 : -1;
  }

  // Linear interpolation of along-segment distance at time t.
  std::optional<double> s_at(double t) const {
    if (path.empty()) return std::nullopt;
    if (t <= path.front().t) return path.front().s_m;
    if (t >= path.back().t) return path.back().s_m;
    auto it = std::lower_bound(
        path.begin(), path.end(), t,
        [](const PathPoint& p, double tv) { return p.t < tv; });
    const PathPoint& b = *it;
    const PathPoint& a = *(it - 1);
    if (b.t <= a.t) return a.s_m;
    const double w = (t - a.t) / (b.t - a.t);
    return a.s_m + w * (b.s_m - a.s_m);
  }
};

struct SplitConfig {
  MatchConfig match;
  double min_duration_s = 3.0;  // runs shorter than this are merged/dropped
  double min_distance_m = 3.0;
};

struct SplitResult {
  std::vector<SegmentTraversal> traversals;
  std::vector<std::string> diagnostics;
  std::size_t unmatched_fixes = 0;
};

namespace detail {

struct FixAssign {
  double t;
  double alt;
  Vec2 local;  // fix position in the network frame
  MatchResult match;
};

struct Run {
  std::string segment_id;
  std::vector<FixAssign> fixes;

  double duration() const {
    return fixes.empty() ? 0.0 : fixes.back().t - fixes.front().t;
  }
  double arc_span() const {
    double lo = 1e18, hi = -1e18;
    for (const auto& f : fixes) {
      lo = std::min(lo, f.match.s_m);
      hi = std::max(hi, f.match.s_m);
    }
    return fixes.empty() ? 0.0 : hi - lo;
  }
};

}  // namespace detail

inline SplitResult split_traversals(const SidewalkNetwork& net,
                                    const TripLog& trip,
                                    const SplitConfig& cfg = {}) {
  SplitResult out;

  std::vector<detail::FixAssign> assigned;
  std::optional<std::string> prev;
  for (const GnssSample& g : trip.ch.gnss) {
    auto m = match_position(net, {g.lat, g.lon}, prev, cfg.match);
    if (m) {
      prev = m->segment_id;
      assigned.push_back({g.t, g.alt_m, net.frame().to_local({g.lat, g.lon}), *m});
    } else {
      ++out.unmatched_fixes;
    }
  }
  if (assigned.empty()) {
    out.diagnostics.push_back("trip " + trip.trip_id + ": no GNSS fix matched any segment");
    return out;
  }

  auto build_runs = [](const std::vector<detail::FixAssign>& fixes) {
    std::vector<detail::Run> runs;
    for (const auto& f : fixes) {
      if (runs.empty() || runs.back().segment_id != f.match.segment_id)
        runs.push_back({f.match.segment_id, {}});
      runs.back().fixes.push_back(f);
    }
    return runs;
  };

  std::vector<detail::Run> runs = build_runs(assigned);

  // Short runs are intersection flapping: absorb them into equal neighbors,
  // otherwise drop them.
  auto is_short = [&cfg](const detail::Run& r) {
    return r.duration() < cfg.min_duration_s || r.arc_span() < cfg.min_distance_m;
  };
  bool changed = true;
  std::size_t dropped_runs = 0;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (!is_short(runs[i])) continue;
      if (i > 0 && i + 1 < runs.size() &&
          runs[i - 1].segment_id == runs[i + 1].segment_id) {
        // Reproject the flapped fixes onto the absorbing segment so the
        // merged path stays consistent.
        const Segment& seg = net.segment(runs[i - 1].segment_id);
        for (auto& f : runs[i].fixes) {
          const PolylineProjection proj = seg.local.project(f.local);
          f.match = MatchResult{seg.id, proj.s_m, proj.d_m, proj.dist_m};
        }
        detail::Run merged;
        merged.segment_id = runs[i - 1].segment_id;
        merged.fixes = runs[i - 1].fixes;
        merged.fixes.insert(merged.fixes.end(), runs[i].fixes.begin(),
                            runs[i].fixes.end());
        merged.fixes.insert(merged.fixes.end(), runs[i + 1].fixes.begin(),
                            runs[i + 1].fixes.end());
        runs[i - 1] = std::move(merged);
        runs.erase(runs.begin() + i, runs.begin() + i + 2);
      } else {
        runs.erase(runs.begin() + i);
        ++dropped_runs;
      }
      changed = true;
      break;
    }
  }
  if (dropped_runs > 0)
    out.diagnostics.push_back("trip " + trip.trip_id + ": dropped " +
                              std::to_string(dropped_runs) + " short run(s)");

  for (const detail::Run& run : runs) {
    if (run.fixes.size() < 2) continue;
    SegmentTraversal trav;
    trav.trip_id = trip.trip_id;
    trav.segment_id = run.segment_id;
    trav.t_enter = run.fixes.front().t;
    trav.t_exit = run.fixes.back().t;
    trav.records = trip.ch.slice(trav.t_enter, trav.t_exit);
    for (const auto& f : run.fixes)
      trav.path.push_back({f.t, f.match.s_m, f.match.d_m});
    out.traversals.push_back(std::move(trav));
  }
  if (out.traversals.empty())
    out.diagnostics.push_back("trip " + trip.trip_id +
                              ": no traversal survived the minimum run filter");
  return out;
}

}  // namespace walkability
