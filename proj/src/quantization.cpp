// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/quantization.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/tools/minima.hpp>

namespace mmia {

namespace {

const boost::math::normal_distribution<double> kStdNormal;

double pdf(double x) { return std::isinf(x) ? 0.0 : boost::math::pdf(kStdNormal, x); }
double cdf(double x) {
  if (x == -std::numeric_limits<double>::infinity()) return 0.0;
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  return boost::math::cdf(kStdNormal, x);
}
double x_pdf(double x) { return std::isinf(x) ? 0.0 : x * pdf(x); }

// E[(X - c)^2 ; a < X < b] for X ~ N(0, 1), from the partial moments of the density.
double cell_error(double a, double b, double c) {
  const double p0 = cdf(b) - cdf(a);
  const double p1 = pdf(a) - pdf(b);
  const double p2 = p0 + x_pdf(a) - x_pdf(b);
  return p2 - 2.0 * c * p1 + c * c * p0;
}

void check_bits(int bits) {
  if (bits < kMinQuantizerBits || bits > kMaxQuantizerBits)
    throw std::invalid_argument("quantizer bits must be in [1, 8], got " + std::to_string(bits));
}

QuantizerModel optimize(int bits) {
  const auto objective = [bits](double step) { return uniform_quantizer_mse(bits, step); };
  const auto [step, mse] = boost::math::tools::brent_find_minima(objective, 1e-4, 4.0, 52);
  return {bits, mse, step};
}

}  // namespace

double uniform_quantizer_mse(int bits, double step) {
  check_bits(bits);
  if (!(step > 0.0)) throw std::invalid_argument("quantizer step must be positive");
  const int half = 1 << (bits - 1);
  const double inf = std::numeric_limits<double>::infinity();
  double mse = 0.0;
  // Symmetric: cells [i*step, (i+1)*step) -> (i + 0.5)*step, the outermost cell open-ended.
  for (int i = 0; i < half; ++i) {
    const double a = i * step;
    const double b = (i == half - 1) ? inf : (i + 1) * step;
    mse += 2.0 * cell_error(a, b, (i + 0.5) * step);
  }
  return mse;
}

double QuantizerModel::low_snr_loss_db() const { return -10.0 * std::log10(1.0 - sigma); }

const QuantizerModel& quantizer_model(int bits) {
  check_bits(bits);
  static const std::array<QuantizerModel, kMaxQuantizerBits> table = [] {
    std::array<QuantizerModel, kMaxQuantizerBits> t{};
    for (int b = kMinQuantizerBits; b <= kMaxQuantizerBits; ++b) t[b - 1] = optimize(b);
    return t;
  }();
  return table[bits - 1];
}

double quantizer_sigma(int bits) { return quantizer_model(bits).sigma; }

double effective_snr(double gamma_hq, double sigma) {
  if (!(gamma_hq >= 0.0)) throw std::invalid_argument("snr must be non-negative");
  if (!(sigma >= 0.0 && sigma < 1.0)) throw std::invalid_argument("quantizer sigma must be in [0, 1)");
  if (std::isinf(gamma_hq)) return sigma == 0.0 ? gamma_hq : (1.0 - sigma) / sigma;
  return (1.0 - sigma) * gamma_hq / (1.0 + sigma * gamma_hq);
}

}  // namespace mmia
