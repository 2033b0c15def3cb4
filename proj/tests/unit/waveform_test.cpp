// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmia/channel.hpp"
#include "mmia/random.hpp"
#include "mmia/waveform.hpp"
#include "oracles.hpp"

using namespace mmia;

TEST_CASE("degrees of freedom") {
  CHECK(degrees_of_freedom(10e-6, 1e6) == 10);
  CHECK(degrees_of_freedom(50e-6, 1e6) == 50);
  CHECK(degrees_of_freedom(100e-6, 1e6) == 100);
  CHECK_THROWS_AS(degrees_of_freedom(0.0, 1e6), std::invalid_argument);
}

TEST_CASE("subsignals are unit-modulus with energy M") {
  const auto set = make_subsignals(10, 4, 0, 99);
  REQUIRE(set.signals.size() == 4);
  for (const auto& s : set.signals) {
    REQUIRE(s.size() == 10);
    double e = 0.0;
    for (auto x : s) {
      CHECK(std::abs(std::abs(x) - 1.0) < 1e-12);
      e += std::norm(x);
    }
    CHECK(std::abs(e - 10.0) < 1e-12);
  }
}

TEST_CASE("subsignals are deterministic") {
  const auto a = make_subsignals(10, 4, 2, 7);
  const auto b = make_subsignals(10, 4, 2, 7);
  CHECK(a.signals == b.signals);
  const auto c = make_subsignals(10, 4, 2, 8);
  CHECK(a.signals != c.signals);
}

TEST_CASE("all 64 waveform indices stay below 0.8 cross-correlation at M = 10") {
  const int n = 64;
  std::vector<SubsignalSet> sets;
  for (int i = 0; i < n; ++i) sets.push_back(make_subsignals(10, 4, i, 2016));
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int d = 0; d < 4; ++d) {
        Complex acc{};
        for (int m = 0; m < 10; ++m) acc += std::conj(sets[a].signals[d][m]) * sets[b].signals[d][m];
        worst = std::max(worst, std::abs(acc) / 10.0);
      }
  CHECK(worst < 0.8);
}

TEST_CASE("subsignal preconditions") {
  CHECK_THROWS_AS(make_subsignals(1, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_subsignals(10, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_subsignals(10, 1, -1, 1), std::invalid_argument);
}

TEST_CASE("H0 batches have unit noise power") {
  const auto set = make_subsignals(10, 4, 0, 1);
  RandomStream rng(4);
  const int trials = 2500;  // 2500 x 10 directions x 4 subsignals = 1e5 vectors
  double acc = 0.0;
  long long count = 0;
  for (int t = 0; t < trials; ++t) {
    const auto ch = effective_channel(ideal_beamspace_channel(3, fading_process(1, 4, rng), 1, 4), 10);
    const auto batch = synthesize_received(set, ch, 0.0, rng);
    for (double tau : batch.noise_variance) CHECK(tau == 1.0);
    for (int l = 0; l < 10; ++l)
      for (int d = 0; d < 4; ++d) {
        double e = 0.0;
        for (auto x : batch.observation(0, l, d)) e += std::norm(x);
        acc += e / 10.0;
        ++count;
      }
  }
  CHECK(acc / count == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("noiseless aligned slot equals psi * s") {
  const auto set = make_subsignals(10, 2, 0, 1);
  RandomStream rng(6);
  const auto psi = fading_process(1, 2, rng);
  const auto ch = effective_channel(ideal_beamspace_channel(1, psi, 1, 2), 3);
  const auto batch = synthesize_received(set, ch, std::numeric_limits<double>::infinity(), rng);
  for (int d = 0; d < 2; ++d) {
    const auto r = batch.observation(0, 1, d);
    for (int m = 0; m < 10; ++m) CHECK(std::abs(r[m] - psi[d] * set.signals[d][m]) < 1e-15);
    for (auto x : batch.observation(0, 0, d)) CHECK(x == Complex{});
  }
}

TEST_CASE("misaligned slots are distributed like H0") {
  const auto set = make_subsignals(10, 1, 0, 1);
  RandomStream rng(12);
  std::vector<double> misaligned, null;
  for (int t = 0; t < 5000; ++t) {
    const auto ch = effective_channel(ideal_beamspace_channel(0, fading_process(1, 1, rng), 1, 1), 2);
    const auto present = synthesize_received(set, ch, 1.0, rng);
    const auto absent = synthesize_received(set, ch, 0.0, rng);
    double e1 = 0.0, e0 = 0.0;
    for (auto x : present.observation(0, 1, 0)) e1 += std::norm(x);
    for (auto x : absent.observation(0, 1, 0)) e0 += std::norm(x);
    misaligned.push_back(e1);
    null.push_back(e0);
  }
  CHECK(oracle::ks_two_sample(misaligned, null) < oracle::ks_two_sample_critical(5000, 5000, 0.01));
}

TEST_CASE("aligned slots carry the configured SNR") {
  const auto set = make_subsignals(10, 4, 0, 1);
  RandomStream rng(31);
  const double snr = 2.5;
  double signal = 0.0, noise = 0.0;
  for (int t = 0; t < 20000; ++t) {
    const auto psi = fading_process(1, 4, rng);
    const auto ch = effective_channel(ideal_beamspace_channel(0, psi, 1, 4), 1);
    const auto batch = synthesize_received(set, ch, snr, rng);
    for (int d = 0; d < 4; ++d) {
      const auto r = batch.observation(0, 0, d);
      for (int m = 0; m < 10; ++m) {
        const Complex s = psi[d] * set.signals[d][m];
        signal += std::norm(s);
        noise += std::norm(r[m] - s);
      }
    }
  }
  CHECK(signal / noise == doctest::Approx(snr).epsilon(0.02));
}

TEST_CASE("per-slot noise variances") {
  const auto set = make_subsignals(4, 1, 0, 1);
  RandomStream rng(1);
  const auto ch = effective_channel(ideal_beamspace_channel(0, {Complex{1.0, 0.0}}, 1, 1), 2);
  const std::vector<double> tau{0.0, 0.0};
  const auto b = synthesize_received(set, ch, tau, rng);
  for (int m = 0; m < 4; ++m) CHECK(b.observation(0, 0, 0)[m] == set.signals[0][m]);
  CHECK_THROWS_AS(synthesize_received(set, ch, std::vector<double>{1.0}, rng), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_received(set, ch, -1.0, rng), std::invalid_argument);
}
