// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/waveform.hpp"

#include <cmath>
#include <stdexcept>

namespace mmia {

int degrees_of_freedom(double t_sig, double w_sig) {
  if (!(t_sig > 0.0) || !(w_sig > 0.0)) throw std::invalid_argument("signal duration and bandwidth must be positive");
  return static_cast<int>(std::lround(t_sig * w_sig));
}

namespace {

constexpr int kMaxAttempts = 1000;

CVector random_phase_sequence(int dof, std::uint64_t seed) {
  RandomStream rng(seed);
  CVector s(dof);
  for (auto& x : s) x = std::polar(1.0, 2.0 * kPi * rng.uniform());
  return s;
}

double normalized_correlation(const CVector& a, const CVector& b) {
  Complex acc{};
  for (std::size_t m = 0; m < a.size(); ++m) acc += std::conj(a[m]) * b[m];
  return std::abs(acc) / static_cast<double>(a.size());
}

// Greedy family for one subsignal slot: index i takes the first candidate whose
// correlation with indices 0..i-1 is below the limit (or the best one seen when
// the limit cannot be met, as happens for very small M).
std::vector<CVector> sequence_family(int dof, int count, int d, std::uint64_t seed) {
  std::vector<CVector> family;
  family.reserve(count);
  for (int i = 0; i < count; ++i) {
    CVector best;
    double best_worst = 2.0;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      CVector cand = random_phase_sequence(
          dof, derive_seed(seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(d),
                                  static_cast<std::uint64_t>(attempt)}));
      double worst = 0.0;
      for (const auto& prev : family) worst = std::max(worst, normalized_correlation(prev, cand));
      if (worst < best_worst) best_worst = worst, best = std::move(cand);
      if (best_worst < kMaxCrossCorrelation) break;
    }
    family.push_back(std::move(best));
  }
  return family;
}

}  // namespace

SubsignalSet make_subsignals(int dof, int n_div, int waveform_index, std::uint64_t seed) {
  if (dof < 2) throw std::invalid_argument("subsignals need M >= 2 degrees of freedom");
  if (n_div < 1) throw std::invalid_argument("need at least one subsignal");
  if (waveform_index < 0) throw std::invalid_argument("waveform index must be non-negative");

  SubsignalSet set{dof, n_div, waveform_index, {}};
  set.signals.reserve(n_div);
  for (int d = 0; d < n_div; ++d) set.signals.push_back(sequence_family(dof, waveform_index + 1, d, seed).back());
  return set;
}

namespace {

void check_dims(const SubsignalSet& signals, const EffectiveChannel& channel) {
  if (channel.n_div != signals.n_div) throw std::invalid_argument("channel and subsignal set disagree on N_div");
  if (channel.gains.size() != static_cast<std::size_t>(channel.cycles) * channel.directions * channel.n_div)
    throw std::invalid_argument("effective channel has inconsistent dimensions");
}

void shape(ReceivedBatch& batch, int cycles, int directions, int n_div, int dof) {
  batch.cycles = cycles;
  batch.directions = directions;
  batch.n_div = n_div;
  batch.dof = dof;
  const std::size_t slots = static_cast<std::size_t>(cycles) * directions * n_div;
  batch.samples.resize(slots * dof);
  batch.noise_variance.resize(slots);
}

}  // namespace

void synthesize_noise_into(ReceivedBatch& batch, int cycles, int directions, int n_div, int dof, RandomStream& rng) {
  shape(batch, cycles, directions, n_div, dof);
  for (auto& x : batch.samples) x = rng.complex_normal();
  std::fill(batch.noise_variance.begin(), batch.noise_variance.end(), 1.0);
}

void synthesize_into(ReceivedBatch& batch, const SubsignalSet& signals, const EffectiveChannel& channel,
                     double snr, RandomStream& rng) {
  if (!(snr >= 0.0)) throw std::invalid_argument("snr must be non-negative");
  check_dims(signals, channel);
  if (snr == 0.0) {
    synthesize_noise_into(batch, channel.cycles, channel.directions, channel.n_div, signals.dof, rng);
    return;
  }
  shape(batch, channel.cycles, channel.directions, channel.n_div, signals.dof);
  const double tau = 1.0 / snr;
  std::fill(batch.noise_variance.begin(), batch.noise_variance.end(), tau);
  const std::size_t slots = batch.noise_variance.size();
  for (std::size_t i = 0; i < slots; ++i) {
    const Complex g = channel.gains[i];
    const auto& s = signals.signals[i % channel.n_div];
    Complex* r = batch.samples.data() + i * signals.dof;
    for (int m = 0; m < signals.dof; ++m) r[m] = g * s[m] + rng.complex_normal(tau);
  }
}

ReceivedBatch synthesize_received(const SubsignalSet& signals, const EffectiveChannel& channel, double snr,
                                  RandomStream& rng) {
  ReceivedBatch batch;
  synthesize_into(batch, signals, channel, snr, rng);
  return batch;
}

ReceivedBatch synthesize_received(const SubsignalSet& signals, const EffectiveChannel& channel,
                                  std::span<const double> noise_variance, RandomStream& rng) {
  check_dims(signals, channel);
  ReceivedBatch batch;
  shape(batch, channel.cycles, channel.directions, channel.n_div, signals.dof);
  if (noise_variance.size() != batch.noise_variance.size())
    throw std::invalid_argument("need one noise variance per (k, l, d) slot");
  for (std::size_t i = 0; i < noise_variance.size(); ++i) {
    if (!(noise_variance[i] >= 0.0)) throw std::invalid_argument("noise variances must be non-negative");
    batch.noise_variance[i] = noise_variance[i];
    const Complex g = channel.gains[i];
    const auto& s = signals.signals[i % channel.n_div];
    Complex* r = batch.samples.data() + i * signals.dof;
    for (int m = 0; m < signals.dof; ++m) r[m] = g * s[m] + rng.complex_normal(noise_variance[i]);
  }
  return batch;
}

}  // namespace mmia
