#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "walkability/filters.hpp"
#include "walkability/surface.hpp"

using namespace walkability;

namespace {

std::vector<ImuSample> sample_signal(double fs, double duration,
                                     auto&& fn) {
  std::vector<ImuSample> out;
  const std::size_t n = static_cast<std::size_t>(duration * fs);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    out.push_back({t, fn(t)});
  }
  return out;
}

// Sinusoid amplitude estimate (RMS * sqrt 2) over the middle 80% of a
// series; the edges carry filter transients.
double central_amplitude(const std::vector<double>& v) {
  const std::size_t lo = v.size() / 10;
  const std::size_t hi = v.size() - v.size() / 10;
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) acc += v[i] * v[i];
  return std::sqrt(2.0 * acc / static_cast<double>(hi - lo));
}

}  // namespace

TEST_CASE("high-pass eliminates a constant (gravity)") {
  const auto sig = sample_signal(100.0, 10.0, [](double) { return 9.81; });
  const FilteredAz out = highpass_az(sig, 1.0);
  REQUIRE(out.ok());
  for (double v : out.value) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("high-pass frequency response matches the transfer-function oracle") {
  const double fs = 100.0;
  const Biquad hp = Biquad::highpass(1.0, fs);

  SECTION("10 Hz tone passes nearly unchanged") {
    const auto sig =
        sample_signal(fs, 30.0, [](double t) { return std::sin(2 * kPi * 10.0 * t); });
    const FilteredAz out = highpass_az(sig, 1.0);
    REQUIRE(out.ok());
    const double amp = central_amplitude(out.value);
    // zero-phase filtering applies |H|^2
    const double oracle = std::pow(hp.magnitude_at(10.0, fs), 2);
    CHECK(amp == Catch::Approx(1.0).margin(0.05));
    CHECK(amp == Catch::Approx(oracle).margin(0.01));
  }
  SECTION("0.1 Hz tone is attenuated by more than 95%") {
    const auto sig =
        sample_signal(fs, 60.0, [](double t) { return std::sin(2 * kPi * 0.1 * t); });
    const FilteredAz out = highpass_az(sig, 1.0);
    REQUIRE(out.ok());
    const double amp = central_amplitude(out.value);
    CHECK(amp < 0.05);
    const double oracle = std::pow(hp.magnitude_at(0.1, fs), 2);
    CHECK(amp == Catch::Approx(oracle).margin(0.01));
  }
}

TEST_CASE("low-pass keeps slow undulation and rejects an 8 Hz ring") {
  const double fs = 100.0;
  const Biquad lp = Biquad::lowpass(3.0, fs);
  const double slow_gain = std::pow(lp.magnitude_at(0.2, fs), 2);
  const double fast_gain = std::pow(lp.magnitude_at(8.0, fs), 2);
  CHECK(slow_gain > 0.99);
  CHECK(fast_gain < 0.05);

  const auto sig = sample_signal(fs, 60.0, [](double t) {
    return std::sin(2 * kPi * 0.2 * t) + std::sin(2 * kPi * 8.0 * t);
  });
  std::vector<double> x;
  for (const auto& s : sig) x.push_back(s.az_mps2);
  const std::vector<double> out = filtfilt(lp, x);
  // the slow tone survives, the ring is gone
  const double amp = central_amplitude(out);
  CHECK(amp == Catch::Approx(1.0).margin(0.06));
}

TEST_CASE("too-short signals yield an empty output with a diagnostic") {
  const auto sig = sample_signal(100.0, 0.05, [](double) { return 1.0; });
  REQUIRE(sig.size() < 10);
  const FilteredAz out = highpass_az(sig, 1.0);
  CHECK(out.value.empty());
  CHECK_FALSE(out.diagnostic.empty());
}

TEST_CASE("sample rate below 4x cutoff is rejected") {
  const auto sig = sample_signal(10.0, 10.0, [](double) { return 1.0; });
  const FilteredAz out = highpass_az(sig, 3.0);
  CHECK(out.value.empty());
  CHECK_FALSE(out.diagnostic.empty());
}

TEST_CASE("sliding RMS") {
  SECTION("constant input gives |c| in every window") {
    std::vector<double> t, x;
    for (int i = 0; i < 500; ++i) {
      t.push_back(i * 0.01);
      x.push_back(-2.5);
    }
    const auto rms = sliding_rms(t, x);
    REQUIRE_FALSE(rms.empty());
    for (const auto& p : rms) CHECK(p.rms == Catch::Approx(2.5).epsilon(1e-12));
  }
  SECTION("unit sinusoid with integer periods per window") {
    std::vector<double> t, x;
    const double fs = 100.0;
    for (int i = 0; i < 1000; ++i) {
      t.push_back(i / fs);
      x.push_back(std::sin(2 * kPi * 2.0 * (i / fs)));  // 2 periods per window
    }
    const auto rms = sliding_rms(t, x, 1.0, 0.1);
    REQUIRE_FALSE(rms.empty());
    for (const auto& p : rms)
      CHECK(p.rms == Catch::Approx(1.0 / std::sqrt(2.0)).margin(0.01));

    // direct-summation oracle for the first window
    double acc = 0.0;
    for (int i = 0; i < 100; ++i) acc += x[i] * x[i];
    CHECK(rms.front().rms == Catch::Approx(std::sqrt(acc / 100.0)).epsilon(1e-12));
  }
  SECTION("zero signal gives all-zero RMS") {
    std::vector<double> t, x;
    for (int i = 0; i < 300; ++i) {
      t.push_back(i * 0.01);
      x.push_back(0.0);
    }
    for (const auto& p : sliding_rms(t, x)) CHECK(p.rms == 0.0);
  }
  SECTION("window timestamps advance by the step") {
    std::vector<double> t, x;
    for (int i = 0; i < 300; ++i) {
      t.push_back(i * 0.01);
      x.push_back(1.0);
    }
    const auto rms = sliding_rms(t, x, 1.0, 0.1);
    REQUIRE(rms.size() >= 2);
    CHECK(rms[1].t - rms[0].t == Catch::Approx(0.1));
  }
}

TEST_CASE("settled one-way filter has no DC startup transient") {
  const Biquad lp = Biquad::lowpass(3.0, 100.0);
  std::vector<double> x(50, 4.2);
  std::vector<double> y;
  detail::lfilter_settled(lp, x, y);
  for (double v : y) CHECK(v == Catch::Approx(4.2).epsilon(1e-9));

  const Biquad hp = Biquad::highpass(1.0, 100.0);
  detail::lfilter_settled(hp, x, y);
  for (double v : y) CHECK(std::abs(v) < 1e-9);
}
