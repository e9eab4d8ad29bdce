#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "walkability/trip_features.hpp"

using namespace walkability;

namespace {

SegmentTraversal traversal_with_speed(auto&& v_of_t, double duration,
                                      double rate_hz = 100.0) {
  SegmentTraversal trav;
  trav.trip_id = "t";
  trav.segment_id = "s";
  trav.t_enter = 0.0;
  trav.t_exit = duration;
  const std::size_t n = static_cast<std::size_t>(duration * rate_hz) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate_hz;
    trav.records.vel.push_back({t, v_of_t(t), 0.0});
  }
  return trav;
}

}  // namespace

TEST_CASE("kinematics: constant 1 m/s for 30 s") {
  const auto trav = traversal_with_speed([](double) { return 1.0; }, 30.0);
  const auto k = compute_kinematics(trav);
  REQUIRE(k);
  CHECK(k->t_seg == Catch::Approx(30.0));
  CHECK(k->d_seg == Catch::Approx(30.0).epsilon(1e-9));
  CHECK(k->v_max == Catch::Approx(1.0));
  CHECK(k->v_min == Catch::Approx(1.0));
  CHECK(k->v_avg == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("kinematics: linear ramp 0 to 1.6 over 20 s") {
  const auto trav =
      traversal_with_speed([](double t) { return 1.6 * t / 20.0; }, 20.0);
  const auto k = compute_kinematics(trav);
  REQUIRE(k);
  // trapezoid is exact on a linear profile
  CHECK(k->d_seg == Catch::Approx(16.0).epsilon(1e-9));
  CHECK(k->v_avg == Catch::Approx(0.8).epsilon(1e-9));
  CHECK(k->v_max == Catch::Approx(1.6));
  CHECK(k->v_min == Catch::Approx(0.0));
}

TEST_CASE("kinematics: fewer than two velocity samples is incomplete") {
  SegmentTraversal trav;
  trav.t_enter = 0;
  trav.t_exit = 10;
  trav.records.vel.push_back({0.0, 1.0, 0.0});
  CHECK_FALSE(compute_kinematics(trav));
}

TEST_CASE("trip peak speed") {
  TripLog trip;
  trip.ch.vel = {{0, 0.2, 0}, {1, 1.55, 0}, {2, 1.3, 0}};
  const auto peak = compute_trip_peak(trip);
  REQUIRE(peak);
  CHECK(*peak == Catch::Approx(1.55));
  CHECK_FALSE(compute_trip_peak(TripLog{}));
}

TEST_CASE("relative duration/distance ratios") {
  SECTION("ratios against the minimum") {
    const std::vector<std::optional<double>> durations{30.0, 45.0, 60.0};
    const auto rel = relative_to_min(durations);
    REQUIRE(rel.size() == 3);
    CHECK(*rel[0] == Catch::Approx(1.0));
    CHECK(*rel[1] == Catch::Approx(1.5));
    CHECK(*rel[2] == Catch::Approx(2.0));
  }
  SECTION("single traversal is its own minimum") {
    const std::vector<std::optional<double>> one{42.0};
    CHECK(*relative_to_min(one)[0] == 1.0);
  }
  SECTION("the minimizing entry gets exactly 1.0 and nulls pass through") {
    std::vector<std::optional<double>> vals{57.3, std::nullopt, 41.7, 99.0};
    const auto rel = relative_to_min(vals);
    CHECK(*rel[2] == 1.0);
    CHECK_FALSE(rel[1]);
    double lo = 1e18;
    for (const auto& r : rel)
      if (r) lo = std::min(lo, *r);
    CHECK(lo == 1.0);
  }
}

TEST_CASE("stops") {
  SECTION("never below the threshold") {
    const auto trav = traversal_with_speed([](double) { return 0.8; }, 20.0, 10.0);
    const Stops s = compute_stops(trav);
    CHECK(s.n_stops == 0);
    CHECK(s.wait_s == 0.0);
  }
  SECTION("one 5 s halt") {
    const auto trav = traversal_with_speed(
        [](double t) { return (t >= 5.0 && t < 10.0) ? 0.0 : 1.0; }, 20.0, 100.0);
    const Stops s = compute_stops(trav);
    CHECK(s.n_stops == 1);
    CHECK(s.wait_s == Catch::Approx(5.0).margin(0.05));
  }
  SECTION("three planted halts of 2/4/6 s") {
    auto profile = [](double t) {
      if (t >= 10 && t < 12) return 0.0;
      if (t >= 20 && t < 24) return 0.0;
      if (t >= 40 && t < 46) return 0.0;
      return 1.2;
    };
    const auto trav = traversal_with_speed(profile, 60.0, 100.0);
    const Stops s = compute_stops(trav);
    CHECK(s.n_stops == 3);
    CHECK(s.wait_s == Catch::Approx(12.0).margin(0.2));
  }
  SECTION("a brief dip below threshold is not a stop") {
    const auto trav = traversal_with_speed(
        [](double t) { return (t >= 5.0 && t < 5.5) ? 0.0 : 1.0; }, 10.0, 100.0);
    const Stops s = compute_stops(trav);
    CHECK(s.n_stops == 0);
  }
  SECTION("wait time never exceeds the duration and no stops means zero wait") {
    const auto trav = traversal_with_speed([](double) { return 0.0; }, 15.0, 10.0);
    const Stops s = compute_stops(trav);
    CHECK(s.n_stops == 1);
    CHECK(s.wait_s <= trav.duration_s() + 1e-9);
  }
}

TEST_CASE("speed drop") {
  SECTION("constant at peak gives zero") {
    const auto trav = traversal_with_speed([](double) { return 1.6; }, 30.0);
    const auto d = compute_speed_drop(trav, 1.6);
    REQUIRE(d);
    CHECK(*d == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("constant offset") {
    const auto trav = traversal_with_speed([](double) { return 0.6; }, 30.0);
    const auto d = compute_speed_drop(trav, 1.6);
    REQUIRE(d);
    CHECK(*d == Catch::Approx(1.0).epsilon(1e-9));
  }
  SECTION("linear decay from peak") {
    const auto trav = traversal_with_speed(
        [](double t) { return 1.6 - t / 30.0; }, 30.0);  // 1.6 -> 0.6
    const auto d = compute_speed_drop(trav, 1.6);
    REQUIRE(d);
    CHECK(*d == Catch::Approx(0.5).margin(0.01));
  }
  SECTION("inconsistent peak throws") {
    const auto trav = traversal_with_speed([](double) { return 1.0; }, 5.0);
    CHECK_THROWS_AS(compute_speed_drop(trav, 0.9), std::invalid_argument);
  }
}

TEST_CASE("speed drop identity: v_drop == v_peak - mean(v)") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    SegmentTraversal trav;
    trav.t_enter = 0.0;
    double t = 0.0;
    const int n = 20 + static_cast<int>(u(gen) * 200);
    for (int i = 0; i < n; ++i) {
      t += 0.02 + u(gen) * 0.4;  // irregular sampling
      trav.records.vel.push_back({t, u(gen) * 1.6, 0.0});
    }
    trav.t_exit = t;
    const double v_peak = 1.6;

    const auto drop = compute_speed_drop(trav, v_peak);
    REQUIRE(drop);

    // independent time-weighted mean over the same span
    const auto& v = trav.records.vel;
    double area = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i)
      area += 0.5 * (v[i].v_mps + v[i - 1].v_mps) * (v[i].t - v[i - 1].t);
    const double mean_v = area / (v.back().t - v.front().t);
    CHECK(std::abs(*drop - (v_peak - mean_v)) < 1e-9);
  }
}

TEST_CASE("scaling velocities scales the speed features and keeps ratios") {
  const double alpha = 0.7;
  const auto trav = traversal_with_speed(
      [](double t) { return 1.0 + 0.5 * std::sin(t); }, 40.0);
  auto scaled = trav;
  for (auto& s : scaled.records.vel) s.v_mps *= alpha;

  const auto k1 = compute_kinematics(trav);
  const auto k2 = compute_kinematics(scaled);
  REQUIRE(k1);
  REQUIRE(k2);
  CHECK(k2->v_max == Catch::Approx(alpha * k1->v_max).epsilon(1e-12));
  CHECK(k2->v_min == Catch::Approx(alpha * k1->v_min).epsilon(1e-12));
  CHECK(k2->v_avg == Catch::Approx(alpha * k1->v_avg).epsilon(1e-12));

  const auto d1 = compute_speed_drop(trav, 1.6);
  const auto d2 = compute_speed_drop(scaled, alpha * 1.6);
  REQUIRE(d1);
  REQUIRE(d2);
  CHECK(*d2 == Catch::Approx(alpha * *d1).epsilon(1e-12));

  // durations are untouched, so relative duration is unchanged
  CHECK(k1->t_seg == k2->t_seg);
}

TEST_CASE("per-trip peaks keep battery-derated trips comparable") {
  // same profile shape, one trip derated by 0.9: v_drop computed against each
  // trip's own peak must match the oracle recomputation per trip
  auto shape = [](double t) { return 1.6 - 0.4 * std::abs(std::sin(t / 7.0)); };
  const auto full = traversal_with_speed(shape, 50.0);
  auto derated = full;
  for (auto& s : derated.records.vel) s.v_mps *= 0.9;

  TripLog trip_full, trip_derated;
  trip_full.ch.vel = full.records.vel;
  trip_derated.ch.vel = derated.records.vel;

  const double peak_full = *compute_trip_peak(trip_full);
  const double peak_derated = *compute_trip_peak(trip_derated);
  CHECK(peak_derated == Catch::Approx(0.9 * peak_full).epsilon(1e-12));

  const auto drop_full = compute_speed_drop(full, peak_full);
  const auto drop_derated = compute_speed_drop(derated, peak_derated);
  REQUIRE(drop_full);
  REQUIRE(drop_derated);
  CHECK(*drop_derated == Catch::Approx(0.9 * *drop_full).epsilon(1e-9));
}
