// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mmia/beamspace.hpp"
#include "mmia/common.hpp"
#include "mmia/random.hpp"

namespace mmia {

enum class LinkState { LOS, NLOS };

/// Close-in pathloss: alpha + 10*beta*log10(d) + xi, xi ~ N(0, sigma^2) in dB.
struct PathlossParams {
  double alpha = 72.0;
  double beta = 2.92;
  double sigma = 8.7;

  static PathlossParams los() { return {61.4, 2.0, 5.8}; }
  static PathlossParams nlos() { return {72.0, 2.92, 8.7}; }
};

/// Link-level parameters shared by the SNR model. Defaults are the 28 GHz
/// small-cell values used throughout.
struct SystemParams {
  double carrier_hz = 28e9;
  double bandwidth_hz = 1e9;  ///< W_tot
  double dl_tx_power_dbm = 30.0;
  double ul_tx_power_dbm = 20.0;
  double ue_noise_figure_db = 7.0;
  double bs_noise_figure_db = 4.0;
  double thermal_noise_dbm_hz = -174.0;
  double los_decay_m = 67.1;  ///< P(LOS) = exp(-d / los_decay_m)
  PathlossParams los = PathlossParams::los();
  PathlossParams nlos = PathlossParams::nlos();

  const PathlossParams& pathloss(LinkState s) const { return s == LinkState::LOS ? los : nlos; }
};

double los_probability(double distance_m, double decay_m = 67.1);
LinkState link_state(double distance_m, RandomStream& rng, double decay_m = 67.1);

/// Pathloss in dB with a caller-supplied shadowing realization xi (dB).
double pathloss_db(double distance_m, const PathlossParams& params, double xi_db);
/// Pathloss in dB with xi drawn from N(0, sigma^2).
double pathloss_db(double distance_m, const PathlossParams& params, RandomStream& rng);

struct LinkBudget {
  double distance_m = 0.0;
  LinkState state = LinkState::LOS;
  double pathloss_db = 0.0;  ///< includes the shadowing realization
  double tx_power_dbm = 0.0;
  double noise_figure_db = 0.0;
  double bandwidth_hz = 1e9;
  double gamma0 = 0.0;  ///< omni-directional SNR over the full bandwidth, linear

  double gamma0_db() const { return linear_to_db(gamma0); }
  /// Energy-to-noise ratio of a signal of duration t_sig without beamforming.
  double signal_snr(double t_sig) const { return gamma0 * t_sig * bandwidth_hz; }
  /// Same with beamforming gains applied.
  double directional_snr(double t_sig, double g_tx, double g_rx) const {
    return signal_snr(t_sig) * g_tx * g_rx;
  }
};

/// Omni SNR for a given pathloss; the dB chain P - PL - (kT + 10log10(W) + NF).
LinkBudget link_budget_for_pathloss(double pathloss_db, LinkDirection direction, const SystemParams& params);
/// Draws the link state and shadowing for a UE at `distance_m`.
LinkBudget link_budget(double distance_m, LinkDirection direction, const SystemParams& params, RandomStream& rng);
/// Fixed state and shadowing.
LinkBudget link_budget(double distance_m, LinkState state, double xi_db, LinkDirection direction,
                       const SystemParams& params);

/// i.i.d. unit-variance complex Gaussian fading psi[k * n_div + d].
std::vector<Complex> fading_process(int cycles, int n_div, RandomStream& rng);

/// Single path aligned with one beamspace hypothesis: the post-beamforming
/// gain is psi[k,d] on hypothesis l0 and exactly zero elsewhere.
struct IdealChannel {
  int l0 = 0;
  int cycles = 1;
  int n_div = 1;
  std::vector<Complex> psi;  ///< [k * n_div + d]
};

IdealChannel ideal_beamspace_channel(int l0, std::vector<Complex> psi, int cycles, int n_div);

/// Multi-cluster spatial channel. Angles are drawn once per realization; path
/// gains are redrawn independently for every (cycle, subsignal).
struct ClusterConfig {
  std::optional<int> num_clusters;  ///< unset: Poisson(mean_clusters) clipped to >= 1
  double mean_clusters = 2.0;
  int paths_per_cluster = 10;
  double angular_spread_deg = 4.0;  ///< per-path angle std around the cluster centre
  // Sectors for cluster centres (degrees): [lo, hi]
  double rx_az_lo_deg = -60.0, rx_az_hi_deg = 60.0;
  double rx_el_lo_deg = -30.0, rx_el_hi_deg = 30.0;
  double tx_az_lo_deg = -60.0, tx_az_hi_deg = 60.0;
  double tx_el_lo_deg = -30.0, tx_el_hi_deg = 30.0;
};

struct ClusterChannel {
  int cycles = 1;
  int n_div = 1;
  int clusters = 0;
  std::vector<Eigen::MatrixXcd> matrices;  ///< N_rx x N_tx, [k * n_div + d]
};

ClusterChannel cluster_channel(const ClusterConfig& config, const ArrayGeometry& rx_array,
                               const ArrayGeometry& tx_array, int cycles, int n_div, RandomStream& rng);

using ChannelRealization = std::variant<IdealChannel, ClusterChannel>;

/// Post-beamforming complex gains for every (cycle, hypothesis, subsignal),
/// normalized by sqrt(G_tx * G_rx) of the schedule so that an aligned ideal
/// path has gain psi.
struct EffectiveChannel {
  int cycles = 1;
  int directions = 1;
  int n_div = 1;
  std::vector<Complex> gains;  ///< [(k * directions + l) * n_div + d]

  Complex at(int k, int l, int d) const { return gains[(static_cast<std::size_t>(k) * directions + l) * n_div + d]; }
};

EffectiveChannel effective_channel(const IdealChannel& channel, int directions);
EffectiveChannel effective_channel(const ClusterChannel& channel, const ScanSchedule& schedule,
                                   const BeamCodebook& tx_book, const BeamCodebook& rx_book);

/// UE beam learned in Sync for an RA cluster channel (N_bs x N_ue): the UE
/// codebook entry maximizing the received energy summed over (k, d).
int learned_tx_beam(const ClusterChannel& channel, const BeamCodebook& tx_book);

/// Hypothesis with the largest energy, summed over (k, d).
int strongest_direction(const EffectiveChannel& channel);

}  // namespace mmia
