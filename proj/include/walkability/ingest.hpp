#pragma once

// Trip-log ingestion: line-delimited JSON parsing with per-line validation,
// the matching serializer, and the daily-weather join.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "walkability/model.hpp"

namespace walkability {

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IngestReport {
  std::size_t total_lines = 0;
  std::size_t kept = 0;
  std::size_t dropped = 0;
  std::vector<std::pair<std::size_t, std::string>> drops;  // line no, reason
  std::map<std::string, std::size_t> channel_counts;
  double t_min = 0.0;
  double t_max = 0.0;
  std::vector<std::string> warnings;
};

struct ParseResult {
  TripLog trip;
  IngestReport report;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline bool finite_number(const nlohmann::json& j, const char* key, double& out) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) return false;
  out = it->get<double>();
  return std::isfinite(out);
}

}  // namespace detail

inline ParseResult parse_trip(std::istream& in, const std::string& trip_id) {
  ParseResult res;
  res.trip.trip_id = trip_id;
  IngestReport& rep = res.report;
  Channels& ch = res.trip.ch;

  // last timestamp per channel (ped: per id) for monotonicity checks
  std::map<std::string, double> last_t;

  std::string line;
  std::size_t line_no = 0;
  auto drop = [&rep](std::size_t no, const std::string& reason) {
    ++rep.dropped;
    rep.drops.emplace_back(no, reason);
  };

  while (std::getline(in, line)) {
    ++line_no;
    ++rep.total_lines;
    if (line.empty()) {
      drop(line_no, "empty line");
      continue;
    }
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      drop(line_no, "invalid json");
      continue;
    }
    double t;
    if (!detail::finite_number(j, "t", t)) {
      drop(line_no, "missing or bad t");
      continue;
    }
    auto type_it = j.find("type");
    if (type_it == j.end() || !type_it->is_string()) {
      drop(line_no, "missing type");
      continue;
    }
    const std::string type = type_it->get<std::string>();

    std::string mono_key = type;
    bool ok = true;
    std::string reason;

    if (type == "gnss") {
      GnssSample g{t, 0, 0, 0};
      if (!detail::finite_number(j, "lat", g.lat) ||
          !detail::finite_number(j, "lon", g.lon) ||
          !detail::finite_number(j, "alt", g.alt_m)) {
        ok = false;
        reason = "bad gnss payload";
      } else if (g.lat < -90 || g.lat > 90 || g.lon < -180 || g.lon > 180) {
        ok = false;
        reason = "coordinate out of range";
      } else if (auto it = last_t.find(mono_key);
                 it != last_t.end() && t <= it->second) {
        ok = false;
        reason = "non-increasing timestamp";
      } else {
        ch.gnss.push_back(g);
      }
    } else if (type == "vel") {
      VelSample v{t, 0, 0};
      if (!detail::finite_number(j, "v", v.v_mps)) {
        ok = false;
        reason = "bad vel payload";
      } else if (v.v_mps < 0) {
        ok = false;
        reason = "negative speed";
      } else if (j.contains("heading") &&
                 !detail::finite_number(j, "heading", v.heading_deg)) {
        ok = false;
        reason = "bad vel payload";
      } else if (auto it = last_t.find(mono_key);
                 it != last_t.end() && t <= it->second) {
        ok = false;
        reason = "non-increasing timestamp";
      } else {
        ch.vel.push_back(v);
      }
    } else if (type == "imu") {
      ImuSample s{t, 0};
      if (!detail::finite_number(j, "az", s.az_mps2)) {
        ok = false;
        reason = "bad imu payload";
      } else if (std::abs(s.az_mps2) >= 50.0) {
        ok = false;
        reason = "az out of range";
      } else if (auto it = last_t.find(mono_key);
                 it != last_t.end() && t <= it->second) {
        ok = false;
        reason = "non-increasing timestamp";
      } else {
        ch.imu.push_back(s);
      }
    } else if (type == "width") {
      WidthSample w{t, 0};
      if (!detail::finite_number(j, "w", w.w_m)) {
        ok = false;
        reason = "bad width payload";
      } else if (w.w_m < 0) {
        ok = false;
        reason = "negative width";
      } else if (auto it = last_t.find(mono_key);
                 it != last_t.end() && t <= it->second) {
        ok = false;
        reason = "non-increasing timestamp";
      } else {
        ch.width.push_back(w);
      }
    } else if (type == "ped") {
      PedSample p;
      p.t = t;
      auto id_it = j.find("id");
      if (id_it == j.end() || !id_it->is_string() ||
          id_it->get<std::string>().empty()) {
        ok = false;
        reason = "bad ped id";
      } else if (!detail::finite_number(j, "x", p.x_m) ||
                 !detail::finite_number(j, "y", p.y_m)) {
        ok = false;
        reason = "bad ped payload";
      } else {
        p.ped_id = id_it->get<std::string>();
        // detections of distinct pedestrians may share a timestamp
        mono_key = "ped:" + p.ped_id;
        if (auto it = last_t.find(mono_key); it != last_t.end() && t <= it->second) {
          ok = false;
          reason = "non-increasing timestamp";
        } else {
          ch.ped.push_back(std::move(p));
        }
      }
    } else if (type == "light") {
      LightSample l{t, 0};
      if (!detail::finite_number(j, "level", l.level)) {
        ok = false;
        reason = "bad light payload";
      } else if (auto it = last_t.find(mono_key);
                 it != last_t.end() && t <= it->second) {
        ok = false;
        reason = "non-increasing timestamp";
      } else {
        ch.light.push_back(l);
      }
    } else {
      ok = false;
      reason = "unknown type";
    }

    if (!ok) {
      drop(line_no, reason);
      continue;
    }
    last_t[mono_key] = t;
    ++rep.kept;
    ++rep.channel_counts[type];
    if (rep.kept == 1) {
      rep.t_min = rep.t_max = t;
    } else {
      rep.t_min = std::min(rep.t_min, t);
      rep.t_max = std::max(rep.t_max, t);
    }
  }

  if (rep.total_lines == 0) throw IngestError("empty log: " + trip_id);
  if (rep.dropped * 10 > rep.total_lines)
    throw IngestError("more than 10% malformed lines in " + trip_id + " (" +
                      std::to_string(rep.dropped) + "/" +
                      std::to_string(rep.total_lines) + ")");
  if (ch.gnss.empty()) throw IngestError("no GNSS channel in " + trip_id);
  if ((rep.t_max - rep.t_min) > 24.0 * 3600.0)
    throw IngestError("trip " + trip_id + " spans more than 24 h");

  res.trip.start_time = rep.t_min;
  return res;
}

inline ParseResult parse_trip_file(const std::string& path,
                                   std::string trip_id = "") {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open log file: " + path);
  if (trip_id.empty()) {
    auto slash = path.find_last_of("/\\");
    trip_id = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dotpos = trip_id.find_last_of('.');
    if (dotpos != std::string::npos) trip_id = trip_id.substr(0, dotpos);
  }
  return parse_trip(in, trip_id);
}

// Serializes a trip back into the wire format, globally time-ordered with a
// stable channel tie-break. parse_trip(write_trip(x)) == x.
inline void write_trip(const TripLog& trip, std::ostream& out) {
  using detail::format_double;
  struct Line {
    double t;
    int chan;
    std::size_t seq;
    std::string text;
  };
  std::vector<Line> lines;
  lines.reserve(trip.ch.total());
  std::size_t seq = 0;
  for (const auto& g : trip.ch.gnss)
    lines.push_back({g.t, 0, seq++,
                     "{\"t\":" + format_double(g.t) + ",\"type\":\"gnss\",\"lat\":" +
                         format_double(g.lat) + ",\"lon\":" + format_double(g.lon) +
                         ",\"alt\":" + format_double(g.alt_m) + "}"});
  for (const auto& v : trip.ch.vel)
    lines.push_back({v.t, 1, seq++,
                     "{\"t\":" + format_double(v.t) + ",\"type\":\"vel\",\"v\":" +
                         format_double(v.v_mps) + ",\"heading\":" +
                         format_double(v.heading_deg) + "}"});
  for (const auto& s : trip.ch.imu)
    lines.push_back({s.t, 2, seq++,
                     "{\"t\":" + format_double(s.t) + ",\"type\":\"imu\",\"az\":" +
                         format_double(s.az_mps2) + "}"});
  for (const auto& w : trip.ch.width)
    lines.push_back({w.t, 3, seq++,
                     "{\"t\":" + format_double(w.t) + ",\"type\":\"width\",\"w\":" +
                         format_double(w.w_m) + "}"});
  for (const auto& p : trip.ch.ped)
    lines.push_back({p.t, 4, seq++,
                     "{\"t\":" + format_double(p.t) + ",\"type\":\"ped\",\"id\":\"" +
                         p.ped_id + "\",\"x\":" + format_double(p.x_m) +
                         ",\"y\":" + format_double(p.y_m) + "}"});
  for (const auto& l : trip.ch.light)
    lines.push_back({l.t, 5, seq++,
                     "{\"t\":" + format_double(l.t) +
                         ",\"type\":\"light\",\"level\":" + format_double(l.level) +
                         "}"});
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.chan != b.chan) return a.chan < b.chan;
    return a.seq < b.seq;
  });
  for (const Line& l : lines) out << l.text << '\n';
}

// ---------- weather ----------

inline std::string utc_date(double epoch_s) {
  const std::time_t tt = static_cast<std::time_t>(std::floor(epoch_s));
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday);
  return buf;
}

struct WeatherRow {
  std::string date;  // YYYY-MM-DD
  double avg_temperature = 0.0;
  double avg_wind_speed = 0.0;
  double pressure = 0.0;
  double precipitation = 0.0;
};

class WeatherTable {
 public:
  WeatherTable() = default;

  static WeatherTable from_csv(std::istream& in) {
    WeatherTable table;
    std::string line;
    if (!std::getline(in, line)) throw IngestError("empty weather table");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,avg_temperature,avg_wind_speed,pressure,precipitation")
      throw IngestError("unexpected weather CSV header: " + line);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string field;
      WeatherRow row;
      std::vector<std::string> fields;
      while (std::getline(ss, field, ',')) fields.push_back(field);
      if (fields.size() != 5)
        throw IngestError("weather line " + std::to_string(line_no) +
                          ": expected 5 fields");
      row.date = fields[0];
      double* nums[4] = {&row.avg_temperature, &row.avg_wind_speed,
                         &row.pressure, &row.precipitation};
      for (int i = 0; i < 4; ++i) {
        try {
          *nums[i] = std::stod(fields[i + 1]);
        } catch (const std::exception&) {
          throw IngestError("weather line " + std::to_string(line_no) +
                            ": bad number '" + fields[i + 1] + "'");
        }
        if (!std::isfinite(*nums[i]))
          throw IngestError("weather line " + std::to_string(line_no) +
                            ": non-finite value");
      }
      if (!table.rows_.emplace(row.date, row).second)
        throw IngestError("duplicate weather date: " + row.date);
    }
    return table;
  }

  static WeatherTable from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open weather file: " + path);
    return from_csv(in);
  }

  const WeatherRow* find(const std::string& date) const {
    auto it = rows_.find(date);
    return it == rows_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::map<std::string, WeatherRow> rows_;
};

// Fills trip.meta from the row matching the trip's start date; leaves the
// trip unchanged when there is no matching row.
inline TripLog join_weather(TripLog trip, const WeatherTable& table) {
  const WeatherRow* row = table.find(utc_date(trip.start_time));
  if (row) {
    trip.meta = WeatherMeta{row->avg_temperature, row->avg_wind_speed,
                            row->pressure, row->precipitation};
  }
  return trip;
}

}  // namespace walkability
