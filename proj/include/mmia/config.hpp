// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmia/beamspace.hpp"
#include "mmia/channel.hpp"

namespace mmia {

enum class ChannelMode { Ideal, Cluster };

std::string_view to_string(ChannelMode mode);
ChannelMode parse_channel_mode(std::string_view text);

/// Every tunable of the experiment drivers. Defaults reproduce the standard
/// parameter set (28 GHz, 1 GHz, 8x8 BS / 4x4 UE, N_div = 4, W_sig = 1 MHz).
struct ExperimentConfig {
  std::uint64_t seed = 2016;
  int trials = 10000;              ///< Monte Carlo trials per (SNR, K) point
  int calibration_trials = 10000;  ///< noise-only trials per threshold
  unsigned threads = 0;            ///< 0: hardware concurrency

  // signal
  int n_div = 4;
  std::vector<double> t_sig_us{10.0, 50.0, 100.0};
  double w_sig_hz = 1e6;

  // false-alarm budget
  double r_fa = 0.01;
  int n_sync = 3;
  int n_rach = 64;
  int n_fo = 23;
  double sync_period_s = 5e-3;
  double cell_radius_m = 100.0;

  ArrayGeometry bs_array{8, 8, 0.5};
  ArrayGeometry ue_array{4, 4, 0.5};
  SystemParams system;

  int adc_bits_ue = 3;
  int adc_bits_bs = 3;

  double pmd_target = 0.01;
  int max_cycles = 10000;

  double phi = 0.05;
  std::vector<double> phi_grid{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};

  // SNR operating points
  int n_ues = 10000;
  std::uint64_t snr_seed = 1;
  double min_distance_m = 1.0;
  double high_percentile = 0.95;

  ChannelMode channel = ChannelMode::Ideal;
  ClusterConfig cluster;

  std::optional<std::filesystem::path> threshold_cache;

  void validate() const;
};

/// Parses a JSON document. Missing keys keep their defaults; unknown keys
/// throw std::invalid_argument naming the offending path.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON rendering (parse_config(config_to_json(c)) == c).
std::string config_to_json(const ExperimentConfig& config, int indent = 2);

}  // namespace mmia
