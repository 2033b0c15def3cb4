// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmia/common.hpp"

namespace mmia {

// --- false-alarm budget ---------------------------------------------------

/// Hypotheses tested per transmission period and the resulting per-hypothesis
/// false-alarm probability P_FA = R_FA / (N_sig * N_dly * N_FO).
struct HypothesisBudget {
  Phase phase = Phase::Sync;
  int n_sig = 1;
  double n_dly = 1.0;  ///< kept real-valued
  int n_fo = 1;
  double r_fa = 0.01;  ///< false alarms per scan period

  double n_hyp() const { return n_sig * n_dly * n_fo; }
  double p_fa() const { return r_fa / n_hyp(); }
  void validate() const;
};

/// Delay hypotheses when correlating at twice the signal bandwidth over `window_s`
/// (the transmission period for Sync, the round-trip time for RA).
double delay_hypotheses(double w_sig, double window_s);
double round_trip_time(double cell_radius_m);

/// Frequency-offset grid: 2 * df_max / df with df_max = ppm * f_c + doppler and
/// df = 1 / (4 * t_sig_max), rounded to the nearest integer.
int frequency_offset_hypotheses(double ppm, double carrier_hz, double doppler_hz, double t_sig_max);

/// Budget for either phase; `window_s` is T_per (Sync) or T_offset (RA).
HypothesisBudget hypothesis_budget(Phase phase, double window_s, double w_sig, double r_fa, int n_sig, int n_fo);

// --- threshold calibration -------------------------------------------------

/// Shape of the detection problem as seen by the GLRT: `directions` counts
/// every beam hypothesis ranked per cycle (digital receivers contribute N_rx
/// per slot).
struct DetectorShape {
  int dof = 10;
  int cycles = 1;
  int directions = 1;
  int n_div = 4;

  std::string label() const;
  void validate() const;
};

/// Sorted (descending) noise-only GLRT statistics.
struct NullSample {
  DetectorShape shape;
  std::uint64_t seed = 0;
  std::vector<double> statistics;
};

/// Runs `n_trials` H0 batches through the full correlation + GLRT chain.
/// Trial i uses the stream derive_seed(seed, {i}), so the sample is
/// independent of the thread count.
NullSample simulate_null(const DetectorShape& shape, int n_trials, std::uint64_t seed, unsigned threads = 0);

struct ThresholdFit {
  double threshold = 0.0;
  double target_pfa = 1.0;
  /// log P(T > t) ~= c0 + c1 t + c2 t^2 over the fitted tail
  std::array<double, 3> coefficients{};
  int n_trials = 0;
  double tail_fraction = 0.01;
  bool extrapolated = false;  ///< threshold obtained from the fit rather than an empirical quantile
  std::vector<std::pair<double, double>> tail_points;  ///< (t, log survival)

  double log_survival(double t) const { return coefficients[0] + t * (coefficients[1] + t * coefficients[2]); }
  double slope(double t) const { return coefficients[1] + 2.0 * t * coefficients[2]; }
};

inline constexpr int kMinCalibrationTrials = 10000;
inline constexpr double kDefaultTailFraction = 0.01;

/// Threshold for `target_pfa` from a null sample. Targets at or above the
/// tail fraction use the empirical quantile; smaller targets solve a
/// least-squares quadratic fit of log survival over the upper tail,
/// constrained to be concave (c2 <= 0). Throws
/// std::runtime_error when the fitted tail is not decreasing.
ThresholdFit fit_threshold(const NullSample& sample, double target_pfa, double tail_fraction = kDefaultTailFraction);

ThresholdFit calibrate_threshold(const DetectorShape& shape, double target_pfa, int n_trials, std::uint64_t seed,
                                 double tail_fraction = kDefaultTailFraction, unsigned threads = 0);

struct FalseAlarmCount {
  long long alarms = 0;
  long long trials = 0;
  double rate() const { return trials ? static_cast<double>(alarms) / trials : 0.0; }
};

/// Counts statistic >= threshold over fresh noise-only trials.
FalseAlarmCount measure_false_alarms(const DetectorShape& shape, double threshold, int n_trials, std::uint64_t seed,
                                     unsigned threads = 0);

/// Central 95% range of Binomial(n, p) counts.
std::pair<long long, long long> binomial_interval95(long long n, double p);

/// Persisted calibrations keyed by (M, K, directions, N_div, P_FA, seed, trials).
class ThresholdCache {
 public:
  static std::string key(const DetectorShape& shape, double target_pfa, std::uint64_t seed, int n_trials);

  std::optional<ThresholdFit> find(const std::string& key) const;
  void insert(const std::string& key, const ThresholdFit& fit);
  std::size_t size() const { return entries_.size(); }

  void load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  std::map<std::string, ThresholdFit> entries_;
};

}  // namespace mmia
