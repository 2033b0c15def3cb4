// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mmia/config.hpp"
#include "mmia/experiments.hpp"

namespace mmia {

/// Shortest round-trip decimal rendering; "inf"/"nan" for non-finite values.
std::string format_number(double value);

/// option,phase,snr_db,K,trials,pmd,ci95
void write_pmd_csv(const std::filesystem::path& path, const std::vector<PmdPoint>& points);

/// option,phase,percentile,T_sig_us,phi,K_star,L,delay_ms (K_star and delay_ms are NA when not achievable)
void write_delay_csv(const std::filesystem::path& path, const std::vector<DelayCurve>& curves);

/// direction,percentile,gamma0_db for the tagged percentiles, plus the full
/// sorted samples in a second file rank,cdf,dl_db,ul_db.
void write_snr_csv(const std::filesystem::path& percentiles_path, const std::filesystem::path& samples_path,
                   const SnrDistribution& dist, const ExperimentConfig& config);

/// arch,sync_tx,phi,bound_ms
void write_bounds_csv(const std::filesystem::path& path, const std::vector<BoundPoint>& points);

/// option,phase,K,M,directions,n_div,target_pfa,threshold
struct ThresholdRow {
  std::string option;
  Phase phase = Phase::Sync;
  DetectorShape shape;
  double target_pfa = 0.0;
  double threshold = 0.0;
};
void write_threshold_csv(const std::filesystem::path& path, const std::vector<ThresholdRow>& rows);

/// Run manifest: command, seed, full effective config, code version, and the
/// operating-point definitions. Contains no timestamps so reruns are identical.
void write_manifest(const std::filesystem::path& path, const std::string& command, const ExperimentConfig& config,
                    const std::vector<std::string>& outputs);

}  // namespace mmia
