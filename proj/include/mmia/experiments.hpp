// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mmia/beamspace.hpp"
#include "mmia/calibration.hpp"
#include "mmia/config.hpp"
#include "mmia/delay.hpp"

namespace mmia {

// --- SNR distribution -------------------------------------------------------

struct SnrDistribution {
  std::vector<double> dl_db;  ///< sorted ascending
  std::vector<double> ul_db;  ///< same drops and shadowing, sorted ascending

  /// Nearest-rank percentile, p in (0, 1].
  double percentile(LinkDirection direction, double p) const;
};

/// Drops `n_ues` UEs uniformly over the annulus [min_distance, radius] and
/// evaluates gamma0 for both link directions on identical pathloss draws.
SnrDistribution run_snr_distribution(const ExperimentConfig& config, int n_ues, std::uint64_t seed);

enum class PercentileTag { P1, P5, Median, High };

std::string_view to_string(PercentileTag tag);
PercentileTag parse_percentile(std::string_view text);  ///< "1%", "5%", "50%", "high"
double percentile_fraction(PercentileTag tag, const ExperimentConfig& config);

/// gamma0 (dB) at the operating point: DL percentiles for Sync, UL for RA,
/// from the reference drop (config.n_ues, config.snr_seed). Memoized.
double operating_snr_db(const ExperimentConfig& config, Phase phase, PercentileTag tag);

// --- link setup -------------------------------------------------------------

/// Everything the Monte Carlo needs to simulate one (option, phase, T_sig).
struct LinkSetup {
  DesignOption option;
  Phase phase = Phase::Sync;
  double t_sig = 10e-6;
  ScanSchedule schedule;
  int dof = 10;
  int hypotheses = 1;  ///< directions ranked by the GLRT per cycle
  int slots = 1;       ///< time slots per cycle (the L of the delay formula)
  bool digital_rx = false;
  int adc_bits = 0;  ///< 0 when the receiver is not digital
  double target_pfa = 1.0;

  DetectorShape shape(int cycles, int n_div) const { return {dof, cycles, hypotheses, n_div}; }
};

LinkSetup link_setup(const ExperimentConfig& config, const DesignOption& option, Phase phase, double t_sig);

/// Per-subsignal, per-dimension SNR on the aligned hypothesis:
/// gamma0 * T_sig * W_tot * G_tx * G_rx / (N_div * M), passed through the
/// quantization model for digital receivers.
double per_dimension_snr(const ExperimentConfig& config, const LinkSetup& setup, double gamma0_db);

/// False-alarm budget for the phase.
HypothesisBudget phase_budget(const ExperimentConfig& config, Phase phase);

/// Calibrated threshold for the shape at the phase's P_FA. Memoized in
/// process and, if config.threshold_cache is set, on disk.
double detection_threshold(const ExperimentConfig& config, const LinkSetup& setup, int cycles);

// --- misdetection -----------------------------------------------------------

struct PmdPoint {
  std::string option;
  Phase phase = Phase::Sync;
  double t_sig = 10e-6;
  double snr_db = 0.0;
  int cycles = 1;
  int trials = 0;
  long long misses = 0;
  double pmd = 0.0;
  double ci95 = 0.0;  ///< Wilson score half-width
  double threshold = 0.0;
};

double wilson_half_width(long long successes, long long trials);

/// Fraction of signal-present trials ending absent or with the wrong direction.
PmdPoint estimate_pmd(const ExperimentConfig& config, const LinkSetup& setup, double snr_db, int cycles, int trials);

std::vector<PmdPoint> run_pmd(const DesignOption& option, Phase phase, double snr_db, double t_sig,
                              const std::vector<int>& cycles, int trials, const ExperimentConfig& config);

struct MinCycles {
  int k_star = 0;  ///< smallest K meeting the target, or 0 if not achievable
  bool achievable = false;
  double pmd = 1.0;  ///< PMD at k_star
  std::vector<PmdPoint> probes;
};

/// Doubling then bisection over K with config.trials per probe, capped at config.max_cycles.
MinCycles min_cycles(const DesignOption& option, Phase phase, double snr_db, double t_sig, double pmd_target,
                     const ExperimentConfig& config);

// --- delay ------------------------------------------------------------------

struct DelayPoint {
  double phi = 0.05;
  double delay_s = 0.0;
};

struct DelayCurve {
  std::string option;
  Phase phase = Phase::Sync;
  PercentileTag percentile = PercentileTag::P1;
  double snr_db = 0.0;
  double t_sig = 10e-6;
  int slots = 1;
  int k_star = 0;
  bool achievable = false;
  std::vector<DelayPoint> points;
};

DelayCurve run_delay_curve(const DesignOption& option, Phase phase, PercentileTag percentile, double t_sig,
                           const std::vector<double>& phi_grid, const ExperimentConfig& config);

struct BoundPoint {
  ReceiverArch arch = ReceiverArch::Analog;
  bool directional_sync = false;  ///< G_tx^sync = G_tx rather than 1
  double phi = 0.05;
  double bound_s = 0.0;
};

/// Sync delay lower bounds over the overhead grid, for both receiver
/// architectures and both sync transmission modes.
std::vector<BoundPoint> run_bounds(const DelayBoundParams& base, const std::vector<double>& phi_grid);

}  // namespace mmia
