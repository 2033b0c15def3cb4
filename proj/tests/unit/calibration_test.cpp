// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "mmia/calibration.hpp"
#include "oracles.hpp"

using namespace mmia;

TEST_CASE("downlink false-alarm budget") {
  const auto b = hypothesis_budget(Phase::Sync, 5e-3, 1e6, 0.01, 3, 23);
  CHECK(b.n_dly == doctest::Approx(1e4));
  CHECK(b.p_fa() == doctest::Approx(1.4493e-8).epsilon(5e-5));
}

TEST_CASE("uplink false-alarm budget") {
  const double t_offset = round_trip_time(100.0);
  CHECK(t_offset == doctest::Approx(0.667e-6).epsilon(1e-3));
  const HypothesisBudget b{Phase::RA, 64, 1.33, 23, 0.01};
  CHECK(b.p_fa() == doctest::Approx(5.1079e-6).epsilon(5e-5));
  const auto physical = hypothesis_budget(Phase::RA, t_offset, 1e6, 0.01, 64, 23);
  CHECK(physical.n_dly == doctest::Approx(1.334).epsilon(1e-3));
}

TEST_CASE("frequency offset hypotheses") {
  CHECK(frequency_offset_hypotheses(1.0, 28e9, 780.0, 100e-6) == 23);
  CHECK(frequency_offset_hypotheses(0.0, 28e9, 0.0, 100e-6) == 1);
}

TEST_CASE("P_FA scales inversely with each hypothesis count") {
  const HypothesisBudget base{Phase::Sync, 3, 1e4, 23, 0.01};
  HypothesisBudget twice = base;
  twice.n_sig *= 2;
  CHECK(twice.p_fa() == doctest::Approx(base.p_fa() / 2));
  twice = base;
  twice.n_dly *= 2;
  CHECK(twice.p_fa() == doctest::Approx(base.p_fa() / 2));
  twice = base;
  twice.n_fo *= 2;
  CHECK(twice.p_fa() == doctest::Approx(base.p_fa() / 2));
  CHECK_THROWS_AS((HypothesisBudget{Phase::Sync, 0, 1.0, 1, 0.01}.validate()), std::invalid_argument);
}

TEST_CASE("shape labels") {
  CHECK(DetectorShape{10, 3, 16, 4}.label() == "M10_K3_H16_D4");
  CHECK_THROWS_AS((DetectorShape{1, 1, 1, 1}.validate()), std::invalid_argument);
}

TEST_CASE("null samples do not depend on the thread count") {
  const DetectorShape shape{10, 2, 4, 2};
  const auto a = simulate_null(shape, 2000, 5, 1);
  const auto b = simulate_null(shape, 2000, 5, 4);
  CHECK(a.statistics == b.statistics);
  for (std::size_t i = 1; i < a.statistics.size(); ++i) CHECK(a.statistics[i - 1] >= a.statistics[i]);
}

TEST_CASE("calibration preconditions") {
  const auto sample = simulate_null({10, 1, 1, 1}, 10000, 3);
  CHECK_THROWS_AS(fit_threshold(sample, 0.0), std::invalid_argument);
  auto small = sample;
  small.statistics.resize(9999);
  CHECK_THROWS_AS(fit_threshold(small, 1e-3), std::invalid_argument);
  CHECK(fit_threshold(sample, 1.0).threshold == 0.0);
}

TEST_CASE("single-dimension threshold matches the exponential tail") {
  const int m = 10;
  const auto fit = calibrate_threshold({m, 1, 1, 1}, 1e-3, 20000, 41);
  const double analytic = m / (m - 1.0) * -std::log(1e-3);
  CHECK(analytic == doctest::Approx(7.675).epsilon(1e-3));
  CHECK(fit.threshold == doctest::Approx(analytic).epsilon(0.05));
  CHECK(fit.extrapolated);
  CHECK(fit.slope(fit.threshold) < 0.0);
  CHECK(fit.threshold >= 0.0);
}

TEST_CASE("four-subsignal threshold matches the Gamma(4) tail") {
  const int m = 10;
  const auto fit = calibrate_threshold({m, 1, 1, 4}, 1e-3, 20000, 43);
  const double oracle = m / (m - 1.0) * oracle::gamma_upper_quantile(4, 1e-3);
  CHECK(fit.threshold == doctest::Approx(oracle).epsilon(0.05));
}

TEST_CASE("empirical quantile above the tail fraction") {
  const auto sample = simulate_null({10, 1, 1, 4}, 10000, 9);
  const auto fit = fit_threshold(sample, 0.05);
  CHECK_FALSE(fit.extrapolated);
  CHECK(fit.threshold == sample.statistics[499]);
}

TEST_CASE("threshold is monotone in the target and in the direction count") {
  const auto sample = simulate_null({10, 1, 16, 4}, 20000, 17);
  const double t3 = fit_threshold(sample, 1e-3).threshold;
  const double t5 = fit_threshold(sample, 1e-5).threshold;
  CHECK(t5 > t3);
  const double t1 = calibrate_threshold({10, 1, 1, 4}, 1e-3, 20000, 17).threshold;
  CHECK(t3 > t1);
}

TEST_CASE("calibrated threshold controls the false-alarm rate") {
  const DetectorShape shape{10, 1, 1, 4};
  const auto fit = calibrate_threshold(shape, 1e-2, 20000, 101);
  const auto count = measure_false_alarms(shape, fit.threshold, 20000, 202);
  const auto [lo, hi] = binomial_interval95(count.trials, 1e-2);
  CHECK(count.alarms >= lo);
  CHECK(count.alarms <= hi);
}

TEST_CASE("binomial interval") {
  const auto [lo, hi] = binomial_interval95(10000, 1e-3);
  CHECK(lo <= 10);
  CHECK(hi >= 10);
  CHECK(lo >= 3);
  CHECK(hi <= 17);
}

TEST_CASE("threshold cache round-trips through a file") {
  const DetectorShape shape{10, 1, 1, 1};
  const auto fit = calibrate_threshold(shape, 1e-3, 10000, 7);
  ThresholdCache cache;
  const auto key = ThresholdCache::key(shape, 1e-3, 7, 10000);
  CHECK_FALSE(cache.find(key));
  cache.insert(key, fit);
  const auto path = std::filesystem::temp_directory_path() / "mmia_cache_test.json";
  cache.save(path);
  ThresholdCache loaded;
  loaded.load(path);
  std::filesystem::remove(path);
  REQUIRE(loaded.size() == 1);
  const auto back = loaded.find(key);
  REQUIRE(back);
  CHECK(back->threshold == fit.threshold);
  CHECK(back->coefficients == fit.coefficients);
  CHECK(back->n_trials == fit.n_trials);
  CHECK(ThresholdCache::key(shape, 1e-3, 8, 10000) != key);
}
