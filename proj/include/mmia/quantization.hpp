// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

namespace mmia {

/// Low-resolution ADC as additive quantization noise.
struct QuantizerModel {
  int bits = 3;        ///< per I/Q
  double sigma = 0.0;  ///< relative mean-squared error of the quantizer
  double step = 0.0;   ///< optimal step size for a unit-variance Gaussian input

  double low_snr_loss_db() const;
};

inline constexpr int kMinQuantizerBits = 1;
inline constexpr int kMaxQuantizerBits = 8;

/// Optimally scaled 2^bits-level uniform midrise quantizer for N(0, 1) input.
/// Values are computed once and memoized. Throws for bits outside [1, 8].
const QuantizerModel& quantizer_model(int bits);
double quantizer_sigma(int bits);

/// Mean-squared error of a 2^bits-level uniform midrise quantizer with the given step, N(0, 1) input.
double uniform_quantizer_mse(int bits, double step);

/// gamma_lq = (1 - sigma) * gamma_hq / (1 + sigma * gamma_hq).
double effective_snr(double gamma_hq, double sigma);

}  // namespace mmia
