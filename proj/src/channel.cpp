// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmia {

double los_probability(double distance_m, double decay_m) {
  if (distance_m < 0.0) throw std::invalid_argument("distance must be non-negative");
  return std::exp(-distance_m / decay_m);
}

LinkState link_state(double distance_m, RandomStream& rng, double decay_m) {
  return rng.bernoulli(los_probability(distance_m, decay_m)) ? LinkState::LOS : LinkState::NLOS;
}

double pathloss_db(double distance_m, const PathlossParams& params, double xi_db) {
  if (!(distance_m >= 1.0)) throw std::invalid_argument("pathloss model is valid for distances >= 1 m");
  return params.alpha + 10.0 * params.beta * std::log10(distance_m) + xi_db;
}

double pathloss_db(double distance_m, const PathlossParams& params, RandomStream& rng) {
  return pathloss_db(distance_m, params, params.sigma * rng.normal());
}

LinkBudget link_budget_for_pathloss(double pl_db, LinkDirection direction, const SystemParams& params) {
  LinkBudget b;
  b.pathloss_db = pl_db;
  b.bandwidth_hz = params.bandwidth_hz;
  if (direction == LinkDirection::Downlink) {
    b.tx_power_dbm = params.dl_tx_power_dbm;
    b.noise_figure_db = params.ue_noise_figure_db;
  } else {
    b.tx_power_dbm = params.ul_tx_power_dbm;
    b.noise_figure_db = params.bs_noise_figure_db;
  }
  const double noise_dbm =
      params.thermal_noise_dbm_hz + 10.0 * std::log10(params.bandwidth_hz) + b.noise_figure_db;
  b.gamma0 = db_to_linear(b.tx_power_dbm - pl_db - noise_dbm);
  return b;
}

LinkBudget link_budget(double distance_m, LinkState state, double xi_db, LinkDirection direction,
                       const SystemParams& params) {
  LinkBudget b = link_budget_for_pathloss(pathloss_db(distance_m, params.pathloss(state), xi_db), direction, params);
  b.distance_m = distance_m;
  b.state = state;
  return b;
}

LinkBudget link_budget(double distance_m, LinkDirection direction, const SystemParams& params, RandomStream& rng) {
  const LinkState state = link_state(distance_m, rng, params.los_decay_m);
  const double xi = params.pathloss(state).sigma * rng.normal();
  return link_budget(distance_m, state, xi, direction, params);
}

std::vector<Complex> fading_process(int cycles, int n_div, RandomStream& rng) {
  if (cycles < 1 || n_div < 1) throw std::invalid_argument("fading_process needs cycles >= 1 and n_div >= 1");
  std::vector<Complex> psi(static_cast<std::size_t>(cycles) * n_div);
  for (auto& z : psi) z = rng.complex_normal();
  return psi;
}

IdealChannel ideal_beamspace_channel(int l0, std::vector<Complex> psi, int cycles, int n_div) {
  if (l0 < 0) throw std::invalid_argument("true direction index must be non-negative");
  if (psi.size() != static_cast<std::size_t>(cycles) * n_div)
    throw std::invalid_argument("fading vector does not match cycles x n_div");
  return IdealChannel{l0, cycles, n_div, std::move(psi)};
}

namespace {

double deg(double d) { return d * kPi / 180.0; }

}  // namespace

ClusterChannel cluster_channel(const ClusterConfig& config, const ArrayGeometry& rx_array,
                               const ArrayGeometry& tx_array, int cycles, int n_div, RandomStream& rng) {
  rx_array.validate();
  tx_array.validate();
  if (cycles < 1 || n_div < 1) throw std::invalid_argument("cluster_channel needs cycles >= 1 and n_div >= 1");
  if (config.paths_per_cluster < 1) throw std::invalid_argument("need at least one path per cluster");

  int clusters = 0;
  if (config.num_clusters) {
    clusters = *config.num_clusters;
    if (clusters < 1) throw std::invalid_argument("cluster channel needs at least one cluster");
  } else {
    if (!(config.mean_clusters > 0.0)) throw std::invalid_argument("mean cluster count must be positive");
    clusters = std::max(1, rng.poisson(config.mean_clusters));
  }

  std::vector<double> power(clusters);
  for (double& p : power) p = rng.exponential();
  double total = 0.0;
  for (double p : power) total += p;
  for (double& p : power) p /= total;

  const double spread = deg(config.angular_spread_deg);
  const int paths = clusters * config.paths_per_cluster;
  std::vector<Eigen::VectorXcd> a_rx, a_tx;
  std::vector<double> path_power;
  a_rx.reserve(paths), a_tx.reserve(paths), path_power.reserve(paths);
  for (int c = 0; c < clusters; ++c) {
    const double rx_az = rng.uniform(deg(config.rx_az_lo_deg), deg(config.rx_az_hi_deg));
    const double rx_el = rng.uniform(deg(config.rx_el_lo_deg), deg(config.rx_el_hi_deg));
    const double tx_az = rng.uniform(deg(config.tx_az_lo_deg), deg(config.tx_az_hi_deg));
    const double tx_el = rng.uniform(deg(config.tx_el_lo_deg), deg(config.tx_el_hi_deg));
    for (int p = 0; p < config.paths_per_cluster; ++p) {
      a_rx.push_back(upa_steering(rx_array, rx_az + spread * rng.normal(), rx_el + spread * rng.normal()));
      a_tx.push_back(upa_steering(tx_array, tx_az + spread * rng.normal(), tx_el + spread * rng.normal()));
      path_power.push_back(power[c] / config.paths_per_cluster);
    }
  }

  ClusterChannel ch;
  ch.cycles = cycles;
  ch.n_div = n_div;
  ch.clusters = clusters;
  const double scale = std::sqrt(static_cast<double>(rx_array.size()) * tx_array.size());
  ch.matrices.reserve(static_cast<std::size_t>(cycles) * n_div);
  for (int i = 0; i < cycles * n_div; ++i) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(rx_array.size(), tx_array.size());
    for (int p = 0; p < paths; ++p) h += rng.complex_normal(path_power[p]) * a_rx[p] * a_tx[p].adjoint();
    ch.matrices.push_back(scale * h);
  }
  return ch;
}

EffectiveChannel effective_channel(const IdealChannel& channel, int directions) {
  if (channel.l0 >= directions) throw std::out_of_range("true direction outside the schedule");
  EffectiveChannel e{channel.cycles, directions, channel.n_div, {}};
  e.gains.assign(static_cast<std::size_t>(channel.cycles) * directions * channel.n_div, Complex{});
  for (int k = 0; k < channel.cycles; ++k)
    for (int d = 0; d < channel.n_div; ++d)
      e.gains[(static_cast<std::size_t>(k) * directions + channel.l0) * channel.n_div + d] =
          channel.psi[static_cast<std::size_t>(k) * channel.n_div + d];
  return e;
}

int learned_tx_beam(const ClusterChannel& channel, const BeamCodebook& tx_book) {
  int best = 0;
  double best_energy = -1.0;
  for (int j = 0; j < tx_book.size(); ++j) {
    double energy = 0.0;
    for (const auto& h : channel.matrices) energy += (h * tx_book.vectors.col(j)).squaredNorm();
    if (energy > best_energy) best_energy = energy, best = j;
  }
  return best;
}

EffectiveChannel effective_channel(const ClusterChannel& channel, const ScanSchedule& schedule,
                                   const BeamCodebook& tx_book, const BeamCodebook& rx_book) {
  const auto hyps = schedule.hypotheses();
  const int n_tx = tx_book.size();
  const int n_rx = rx_book.size();
  if (channel.matrices.empty() || channel.matrices.front().rows() != n_rx || channel.matrices.front().cols() != n_tx)
    throw std::invalid_argument("channel dimensions do not match the codebooks");

  const bool has_fixed = std::any_of(hyps.begin(), hyps.end(), [](const BeamPair& p) { return p.tx == kFixedBeam; });
  const int fixed = has_fixed ? learned_tx_beam(channel, tx_book) : 0;

  auto tx_vector = [&](int tx) -> Eigen::VectorXcd {
    if (tx == kOmniBeam) return Eigen::VectorXcd::Unit(n_tx, 0);
    return tx_book.vectors.col(tx == kFixedBeam ? fixed : tx);
  };
  auto rx_vector = [&](int rx) -> Eigen::VectorXcd {
    if (rx == kOmniBeam) return Eigen::VectorXcd::Unit(n_rx, 0);
    return rx_book.vectors.col(rx);
  };

  const double norm = 1.0 / std::sqrt(schedule.aligned_gain());
  EffectiveChannel e{channel.cycles, static_cast<int>(hyps.size()), channel.n_div, {}};
  e.gains.resize(static_cast<std::size_t>(e.cycles) * e.directions * e.n_div);
  for (int l = 0; l < e.directions; ++l) {
    const Eigen::VectorXcd v = tx_vector(hyps[l].tx);
    const Eigen::VectorXcd u = rx_vector(hyps[l].rx);
    for (int k = 0; k < e.cycles; ++k)
      for (int d = 0; d < e.n_div; ++d) {
        const auto& h = channel.matrices[static_cast<std::size_t>(k) * e.n_div + d];
        e.gains[(static_cast<std::size_t>(k) * e.directions + l) * e.n_div + d] = norm * u.dot(h * v);
      }
  }
  return e;
}

int strongest_direction(const EffectiveChannel& channel) {
  int best = 0;
  double best_energy = -1.0;
  for (int l = 0; l < channel.directions; ++l) {
    double energy = 0.0;
    for (int k = 0; k < channel.cycles; ++k)
      for (int d = 0; d < channel.n_div; ++d) energy += std::norm(channel.at(k, l, d));
    if (energy > best_energy) best_energy = energy, best = l;
  }
  return best;
}

}  // namespace mmia
