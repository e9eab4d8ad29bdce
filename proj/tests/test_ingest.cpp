#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "test_util.hpp"
#include "walkability/ingest.hpp"

using namespace walkability;

TEST_CASE("parse_trip: minimal valid three-line log") {
  std::istringstream in(
      "{\"t\":0.0,\"type\":\"gnss\",\"lat\":59.35,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":0.1,\"type\":\"vel\",\"v\":1.2,\"heading\":90.0}\n"
      "{\"t\":0.11,\"type\":\"imu\",\"az\":9.81}\n");
  const ParseResult res = parse_trip(in, "t1");
  CHECK(res.report.total_lines == 3);
  CHECK(res.report.kept == 3);
  CHECK(res.report.dropped == 0);
  CHECK(res.trip.ch.gnss.size() == 1);
  CHECK(res.trip.ch.vel.size() == 1);
  CHECK(res.trip.ch.imu.size() == 1);
  CHECK(res.trip.start_time == 0.0);
}

TEST_CASE("parse_trip: negative speed line is dropped with its reason") {
  std::istringstream in(
      "{\"t\":0,\"type\":\"gnss\",\"lat\":59.35,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":1,\"type\":\"gnss\",\"lat\":59.3501,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":2,\"type\":\"gnss\",\"lat\":59.3502,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":3,\"type\":\"gnss\",\"lat\":59.3503,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":4,\"type\":\"gnss\",\"lat\":59.3504,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":5,\"type\":\"gnss\",\"lat\":59.3505,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":6,\"type\":\"gnss\",\"lat\":59.3506,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":7,\"type\":\"gnss\",\"lat\":59.3507,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":8,\"type\":\"gnss\",\"lat\":59.3508,\"lon\":18.07,\"alt\":12.0}\n"
      "{\"t\":5,\"type\":\"vel\",\"v\":-1}\n");
  const ParseResult res = parse_trip(in, "t1");
  CHECK(res.report.dropped == 1);
  REQUIRE(res.report.drops.size() == 1);
  CHECK(res.report.drops[0].first == 10);
  CHECK(res.report.drops[0].second == "negative speed");
  CHECK(res.trip.ch.vel.empty());
}

TEST_CASE("parse_trip: every dropped line carries exactly one reason") {
  std::ostringstream log;
  for (int i = 0; i < 30; ++i)
    log << "{\"t\":" << i << ",\"type\":\"gnss\",\"lat\":59.35,\"lon\":18.07,"
        << "\"alt\":12.0}\n";
  log << "not json at all\n";
  log << "{\"t\":31,\"type\":\"mystery\"}\n";
  std::istringstream in(log.str());
  const ParseResult res = parse_trip(in, "t1");
  CHECK(res.report.dropped == 2);
  CHECK(res.report.drops.size() == res.report.dropped);
  CHECK(res.report.kept + res.report.dropped == res.report.total_lines);
}

TEST_CASE("parse_trip: hard errors") {
  SECTION("more than 10% malformed") {
    std::istringstream in(
        "{\"t\":0,\"type\":\"gnss\",\"lat\":59.35,\"lon\":18.07,\"alt\":12.0}\n"
        "garbage\n");
    CHECK_THROWS_AS(parse_trip(in, "bad"), IngestError);
  }
  SECTION("no GNSS channel") {
    std::istringstream in(
        "{\"t\":0,\"type\":\"vel\",\"v\":1.0,\"heading\":0}\n");
    CHECK_THROWS_WITH(parse_trip(in, "nogps"),
                      Catch::Matchers::ContainsSubstring("GNSS"));
  }
  SECTION("empty source") {
    std::istringstream in("");
    CHECK_THROWS_AS(parse_trip(in, "empty"), IngestError);
  }
}

TEST_CASE("parse_trip: per-channel timestamps must strictly increase, ped per id") {
  std::ostringstream log;
  for (int i = 0; i < 10; ++i)
    log << "{\"t\":" << i << ",\"type\":\"gnss\",\"lat\":59.35,\"lon\":18.07,"
        << "\"alt\":0}\n";
  log << "{\"t\":1,\"type\":\"ped\",\"id\":\"a\",\"x\":2,\"y\":0}\n";
  log << "{\"t\":1,\"type\":\"ped\",\"id\":\"b\",\"x\":3,\"y\":0}\n";
  log << "{\"t\":1,\"type\":\"ped\",\"id\":\"a\",\"x\":2,\"y\":0}\n";
  std::istringstream in(log.str());
  const ParseResult res = parse_trip(in, "t");
  CHECK(res.trip.ch.ped.size() == 2);  // same id at the same t is dropped
  CHECK(res.report.dropped == 1);
  CHECK(res.report.drops[0].second == "non-increasing timestamp");
}

TEST_CASE("parse_trip is deterministic") {
  const std::string bytes =
      "{\"t\":0,\"type\":\"gnss\",\"lat\":59.35,\"lon\":18.07,\"alt\":3.5}\n"
      "{\"t\":0.5,\"type\":\"width\",\"w\":2.25}\n"
      "{\"t\":0.75,\"type\":\"light\",\"level\":81.5}\n";
  std::istringstream in1(bytes), in2(bytes);
  const ParseResult a = parse_trip(in1, "t");
  const ParseResult b = parse_trip(in2, "t");
  CHECK(a.trip == b.trip);
  CHECK(a.report.kept == b.report.kept);
  CHECK(a.report.channel_counts == b.report.channel_counts);
}

TEST_CASE("serialization round-trip preserves the trip") {
  TripLog trip;
  trip.trip_id = "rt";
  auto gen = testutil::rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double t = 1726646400.0;
  for (int i = 0; i < 200; ++i) {
    t += 0.05 + u(gen);
    const int pick = static_cast<int>(u(gen) * 6);
    switch (pick) {
      case 0:
        trip.ch.gnss.push_back({t, 59.35 + u(gen) * 1e-3, 18.07 + u(gen) * 1e-3,
                                u(gen) * 30.0});
        break;
      case 1:
        trip.ch.vel.push_back({t, u(gen) * 1.6, u(gen) * 360.0});
        break;
      case 2:
        trip.ch.imu.push_back({t, 9.81 + (u(gen) - 0.5)});
        break;
      case 3:
        trip.ch.width.push_back({t, u(gen) * 5.0});
        break;
      case 4:
        trip.ch.ped.push_back({t, "p" + std::to_string(i % 3), u(gen) * 8.0,
                               (u(gen) - 0.5) * 4.0});
        break;
      default:
        trip.ch.light.push_back({t, u(gen) * 100.0});
        break;
    }
  }
  trip.start_time = trip.ch.gnss.empty() ? t : trip.ch.gnss.front().t;

  std::ostringstream out;
  write_trip(trip, out);
  std::istringstream in(out.str());
  const ParseResult back = parse_trip(in, "rt");
  CHECK(back.trip.ch == trip.ch);
  CHECK(back.report.dropped == 0);

  // writing again produces identical bytes
  std::ostringstream out2;
  write_trip(back.trip, out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("utc_date") {
  CHECK(utc_date(0.0) == "1970-01-01");
  CHECK(utc_date(1726646400.0) == "2024-09-18");
  CHECK(utc_date(1726646400.0 + 3600.0 * 10) == "2024-09-18");
}

TEST_CASE("weather join by calendar date") {
  std::istringstream csv(
      "date,avg_temperature,avg_wind_speed,pressure,precipitation\n"
      "2024-09-18,12.0,3.5,1013.2,0.0\n"
      "2024-09-19,9.5,5.0,1002.7,4.2\n");
  const WeatherTable table = WeatherTable::from_csv(csv);
  CHECK(table.size() == 2);

  TripLog trip;
  trip.trip_id = "t";
  trip.start_time = 1726646400.0;  // 2024-09-18 08:00Z

  SECTION("matching date fills meta") {
    const TripLog joined = join_weather(trip, table);
    REQUIRE(joined.meta);
    CHECK(joined.meta->temperature_c == Catch::Approx(12.0));
    CHECK(joined.meta->pressure_hpa == Catch::Approx(1013.2));
  }
  SECTION("no matching date leaves meta empty") {
    trip.start_time += 5 * 86400.0;
    const TripLog joined = join_weather(trip, table);
    CHECK_FALSE(joined.meta);
  }
}

TEST_CASE("weather join coverage equals date-set intersection") {
  std::ostringstream csv;
  csv << "date,avg_temperature,avg_wind_speed,pressure,precipitation\n";
  std::set<std::string> table_dates;
  for (int d = 0; d < 20; d += 2) {  // every other day
    const std::string date = utc_date(1726646400.0 + d * 86400.0);
    table_dates.insert(date);
    csv << date << ",10.0,2.0,1010.0,0.0\n";
  }
  std::istringstream in(csv.str());
  const WeatherTable table = WeatherTable::from_csv(in);

  std::size_t joined_count = 0, oracle = 0;
  for (int d = 0; d < 20; ++d) {
    TripLog trip;
    trip.start_time = 1726646400.0 + d * 86400.0 + 1234.0;
    if (join_weather(trip, table).meta) ++joined_count;
    if (table_dates.count(utc_date(trip.start_time))) ++oracle;
  }
  CHECK(joined_count == oracle);
  CHECK(joined_count == 10);
}

TEST_CASE("weather table validation") {
  SECTION("duplicate date") {
    std::istringstream in(
        "date,avg_temperature,avg_wind_speed,pressure,precipitation\n"
        "2024-09-18,1,2,3,4\n"
        "2024-09-18,5,6,7,8\n");
    CHECK_THROWS_WITH(WeatherTable::from_csv(in),
                      Catch::Matchers::ContainsSubstring("duplicate"));
  }
  SECTION("bad header") {
    std::istringstream in("day,temp\n");
    CHECK_THROWS_AS(WeatherTable::from_csv(in), IngestError);
  }
  SECTION("bad number") {
    std::istringstream in(
        "date,avg_temperature,avg_wind_speed,pressure,precipitation\n"
        "2024-09-18,abc,2,3,4\n");
    CHECK_THROWS_AS(WeatherTable::from_csv(in), IngestError);
  }
}
