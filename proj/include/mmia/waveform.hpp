// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mmia/channel.hpp"
#include "mmia/common.hpp"
#include "mmia/random.hpp"

namespace mmia {

/// The N_div known subsignals of one waveform, each a unit-modulus sequence
/// with M degrees of freedom (so ||s||^2 = M exactly).
struct SubsignalSet {
  int dof = 2;  ///< M
  int n_div = 1;
  int waveform_index = 0;
  std::vector<CVector> signals;  ///< [d][m]

  std::span<const Complex> subsignal(int d) const { return signals[d]; }
};

/// Degrees of freedom of a T_sig x W_sig subsignal, rounded to the nearest integer.
int degrees_of_freedom(double t_sig, double w_sig);

/// Maximum normalized cross-correlation |s_a^* s_b| / M accepted between two
/// waveform indices sharing a subsignal slot.
inline constexpr double kMaxCrossCorrelation = 0.75;

/// Deterministic pseudo-random phase sequences keyed by (seed, waveform_index, d).
/// Waveform i is drawn so that its correlation with every lower index stays
/// below kMaxCrossCorrelation.
SubsignalSet make_subsignals(int dof, int n_div, int waveform_index, std::uint64_t seed);

/// r_{k l d} observations, stored [(k * directions + l) * n_div + d][m].
struct ReceivedBatch {
  int cycles = 0;
  int directions = 0;
  int n_div = 0;
  int dof = 0;
  std::vector<Complex> samples;
  std::vector<double> noise_variance;  ///< tau_{k l d}

  std::size_t slot(int k, int l, int d) const {
    return (static_cast<std::size_t>(k) * directions + l) * n_div + d;
  }
  std::span<const Complex> observation(int k, int l, int d) const {
    return {samples.data() + slot(k, l, d) * dof, static_cast<std::size_t>(dof)};
  }
};

/// Synthesizes r = g * s + w with w ~ CN(0, tau I). For snr > 0 the noise
/// variance is tau = 1 / snr, so a unit-power aligned gain sees `snr` per
/// degree of freedom. snr == 0 means the signal is absent (H0) and tau = 1.
ReceivedBatch synthesize_received(const SubsignalSet& signals, const EffectiveChannel& channel, double snr,
                                  RandomStream& rng);

/// Same, writing into an existing batch to reuse its storage.
void synthesize_into(ReceivedBatch& batch, const SubsignalSet& signals, const EffectiveChannel& channel,
                     double snr, RandomStream& rng);

/// Per-slot noise variances (one per (k, l, d)); signal always present.
ReceivedBatch synthesize_received(const SubsignalSet& signals, const EffectiveChannel& channel,
                                  std::span<const double> noise_variance, RandomStream& rng);

/// Noise-only batch with unit noise variance.
void synthesize_noise_into(ReceivedBatch& batch, int cycles, int directions, int n_div, int dof, RandomStream& rng);

}  // namespace mmia
