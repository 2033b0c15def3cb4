// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>

#include "mmia/common.hpp"
#include "mmia/quantization.hpp"

using namespace mmia;

TEST_CASE("low-SNR quantization loss per bit count") {
  CHECK(std::abs(quantizer_model(1).low_snr_loss_db() - 1.96) <= 0.05);
  CHECK(std::abs(quantizer_model(2).low_snr_loss_db() - 0.54) <= 0.03);
  CHECK(std::abs(quantizer_model(3).low_snr_loss_db() - 0.15) <= 0.03);
}

TEST_CASE("one-bit quantizer matches the sign quantizer in closed form") {
  // Optimal 1-bit step for N(0,1): reconstruction +-sqrt(2/pi), MSE 1 - 2/pi.
  CHECK(quantizer_sigma(1) == doctest::Approx(1.0 - 2.0 / kPi).epsilon(1e-8));
  CHECK(quantizer_model(1).step == doctest::Approx(2.0 * std::sqrt(2.0 / kPi)).epsilon(1e-6));
}

TEST_CASE("sigma decreases with resolution and stays in (0, 1)") {
  double prev = 1.0;
  for (int b = 1; b <= 8; ++b) {
    const double s = quantizer_sigma(b);
    CHECK(s > 0.0);
    CHECK(s < prev);
    prev = s;
  }
  CHECK_THROWS_AS(quantizer_sigma(0), std::invalid_argument);
  CHECK_THROWS_AS(quantizer_sigma(9), std::invalid_argument);
}

TEST_CASE("uniform quantizer MSE is minimized at the reported step") {
  for (int b = 1; b <= 4; ++b) {
    const auto& q = quantizer_model(b);
    CHECK(uniform_quantizer_mse(b, q.step * 1.05) > q.sigma);
    CHECK(uniform_quantizer_mse(b, q.step * 0.95) > q.sigma);
  }
  CHECK_THROWS_AS(uniform_quantizer_mse(3, 0.0), std::invalid_argument);
}

TEST_CASE("effective SNR identities") {
  CHECK(effective_snr(5.0, 0.0) == 5.0);
  CHECK(effective_snr(0.0, 0.3) == 0.0);
  const double sigma = quantizer_sigma(3);
  CHECK(effective_snr(std::numeric_limits<double>::infinity(), sigma) == doctest::Approx((1 - sigma) / sigma));
  CHECK(effective_snr(1e12, sigma) == doctest::Approx((1 - sigma) / sigma).epsilon(1e-9));
  CHECK(effective_snr(1e-9, sigma) / 1e-9 == doctest::Approx(1.0 - sigma).epsilon(1e-8));
  CHECK_THROWS_AS(effective_snr(-1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(effective_snr(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("effective SNR monotonicity") {
  for (double g : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    CHECK(effective_snr(g * 1.1, 0.1) > effective_snr(g, 0.1));
    CHECK(effective_snr(g, 0.2) < effective_snr(g, 0.1));
    CHECK(effective_snr(g, 0.1) < g);
  }
}
