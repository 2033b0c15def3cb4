// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

#include "mmia/channel.hpp"
#include "mmia/detector.hpp"
#include "mmia/parallel.hpp"
#include "mmia/quantization.hpp"
#include "mmia/random.hpp"
#include "mmia/waveform.hpp"

namespace mmia {

// --- SNR distribution -------------------------------------------------------

double SnrDistribution::percentile(LinkDirection direction, double p) const {
  const auto& v = direction == LinkDirection::Downlink ? dl_db : ul_db;
  if (v.empty()) throw std::logic_error("empty SNR distribution");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("percentile must be in (0, 1]");
  const auto n = static_cast<long long>(v.size());
  const long long rank = std::clamp<long long>(static_cast<long long>(std::ceil(p * n)), 1, n);
  return v[rank - 1];
}

SnrDistribution run_snr_distribution(const ExperimentConfig& config, int n_ues, std::uint64_t seed) {
  if (n_ues < 1000) throw std::invalid_argument("run_snr_distribution needs at least 1000 UEs");
  const double r2 = config.cell_radius_m * config.cell_radius_m;
  const double m2 = config.min_distance_m * config.min_distance_m;
  SnrDistribution out;
  out.dl_db.resize(n_ues);
  out.ul_db.resize(n_ues);
  for (int i = 0; i < n_ues; ++i) {
    RandomStream rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const double d = std::sqrt(m2 + rng.uniform() * (r2 - m2));
    const LinkState state = link_state(d, rng, config.system.los_decay_m);
    const double xi = config.system.pathloss(state).sigma * rng.normal();
    out.dl_db[i] = link_budget(d, state, xi, LinkDirection::Downlink, config.system).gamma0_db();
    out.ul_db[i] = link_budget(d, state, xi, LinkDirection::Uplink, config.system).gamma0_db();
  }
  std::sort(out.dl_db.begin(), out.dl_db.end());
  std::sort(out.ul_db.begin(), out.ul_db.end());
  return out;
}

std::string_view to_string(PercentileTag tag) {
  switch (tag) {
    case PercentileTag::P1: return "1%";
    case PercentileTag::P5: return "5%";
    case PercentileTag::Median: return "50%";
    case PercentileTag::High: return "high";
  }
  return "?";
}

PercentileTag parse_percentile(std::string_view text) {
  if (text == "1%" || text == "1") return PercentileTag::P1;
  if (text == "5%" || text == "5") return PercentileTag::P5;
  if (text == "50%" || text == "50" || text == "median") return PercentileTag::Median;
  if (text == "high") return PercentileTag::High;
  throw std::invalid_argument("unknown percentile '" + std::string(text) + "' (expected 1%|5%|50%|high)");
}

double percentile_fraction(PercentileTag tag, const ExperimentConfig& config) {
  switch (tag) {
    case PercentileTag::P1: return 0.01;
    case PercentileTag::P5: return 0.05;
    case PercentileTag::Median: return 0.5;
    case PercentileTag::High: return config.high_percentile;
  }
  return 0.5;
}

double operating_snr_db(const ExperimentConfig& config, Phase phase, PercentileTag tag) {
  static std::mutex mutex;
  static std::map<std::string, SnrDistribution> memo;
  const std::string key = config_to_json(config, -1);
  std::lock_guard lock(mutex);
  auto it = memo.find(key);
  if (it == memo.end()) it = memo.emplace(key, run_snr_distribution(config, config.n_ues, config.snr_seed)).first;
  const LinkDirection dir = phase == Phase::Sync ? LinkDirection::Downlink : LinkDirection::Uplink;
  return it->second.percentile(dir, percentile_fraction(tag, config));
}

// --- link setup -------------------------------------------------------------

HypothesisBudget phase_budget(const ExperimentConfig& config, Phase phase) {
  if (phase == Phase::Sync)
    return hypothesis_budget(phase, config.sync_period_s, config.w_sig_hz, config.r_fa, config.n_sync, config.n_fo);
  return hypothesis_budget(phase, round_trip_time(config.cell_radius_m), config.w_sig_hz, config.r_fa, config.n_rach,
                           config.n_fo);
}

LinkSetup link_setup(const ExperimentConfig& config, const DesignOption& option, Phase phase, double t_sig) {
  LinkSetup s;
  s.option = option;
  s.phase = phase;
  s.t_sig = t_sig;
  s.schedule = scan_schedule(option, phase, config.bs_array, config.ue_array);
  s.dof = degrees_of_freedom(t_sig, config.w_sig_hz);
  s.hypotheses = s.schedule.hypothesis_count();
  s.slots = s.schedule.slots();
  const RxMode rx = phase == Phase::Sync ? option.sync_rx : option.ra_rx;
  s.digital_rx = rx == RxMode::Digital;
  s.adc_bits = s.digital_rx ? (phase == Phase::Sync ? config.adc_bits_ue : config.adc_bits_bs) : 0;
  s.target_pfa = phase_budget(config, phase).p_fa();
  return s;
}

double per_dimension_snr(const ExperimentConfig& config, const LinkSetup& setup, double gamma0_db) {
  if (std::isinf(gamma0_db) && gamma0_db < 0.0) return 0.0;
  const double gamma0 = db_to_linear(gamma0_db);
  const double snr = gamma0 * setup.t_sig * config.system.bandwidth_hz * setup.schedule.aligned_gain() /
                     (static_cast<double>(config.n_div) * setup.dof);
  return setup.digital_rx ? effective_snr(snr, quantizer_sigma(setup.adc_bits)) : snr;
}

double detection_threshold(const ExperimentConfig& config, const LinkSetup& setup, int cycles) {
  static std::mutex mutex;
  static std::map<std::string, double> memo;
  const DetectorShape shape = setup.shape(cycles, config.n_div);
  const std::uint64_t seed = derive_seed(config.seed, {label_id("null"), label_id(shape.label())});
  const std::string key = ThresholdCache::key(shape, setup.target_pfa, seed, config.calibration_trials);

  std::lock_guard lock(mutex);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  ThresholdCache disk;
  if (config.threshold_cache) {
    disk.load(*config.threshold_cache);
    if (auto hit = disk.find(key)) return memo[key] = hit->threshold;
  }
  const ThresholdFit fit =
      calibrate_threshold(shape, setup.target_pfa, config.calibration_trials, seed, kDefaultTailFraction,
                          config.threads);
  if (config.threshold_cache) {
    disk.insert(key, fit);
    disk.save(*config.threshold_cache);
  }
  return memo[key] = fit.threshold;
}

// --- misdetection -----------------------------------------------------------

double wilson_half_width(long long successes, long long trials) {
  if (trials < 1) return 0.0;
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = successes / n;
  return z / (1.0 + z * z / n) * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
}

PmdPoint estimate_pmd(const ExperimentConfig& config, const LinkSetup& setup, double snr_db, int cycles, int trials) {
  if (cycles < 1 || trials < 1) throw std::invalid_argument("estimate_pmd needs cycles >= 1 and trials >= 1");
  const double threshold = detection_threshold(config, setup, cycles);
  const double snr = per_dimension_snr(config, setup, snr_db);
  const SubsignalSet signals = make_subsignals(setup.dof, config.n_div, 0, config.seed);
  const int n_div = config.n_div;
  const int dirs = setup.hypotheses;

  // Streams exclude the SNR so that sweeps share random numbers across SNR.
  const std::uint64_t point = label_id(fmt::format("pmd|{}|{}|{}|{}", setup.option.name(), to_string(setup.phase),
                                                   setup.dof, to_string(config.channel)));

  const bool cluster = config.channel == ChannelMode::Cluster;
  const ArrayGeometry& rx_array = setup.phase == Phase::Sync ? config.ue_array : config.bs_array;
  const ArrayGeometry& tx_array = setup.phase == Phase::Sync ? config.bs_array : config.ue_array;
  const BeamCodebook rx_book = cluster ? beamspace_codebook(rx_array) : BeamCodebook{};
  const BeamCodebook tx_book = cluster ? beamspace_codebook(tx_array) : BeamCodebook{};

  std::vector<unsigned char> missed(static_cast<std::size_t>(trials));
  parallel_blocks(missed.size(), config.threads, [&](unsigned, std::size_t begin, std::size_t end) {
    ReceivedBatch batch;
    CorrelationTensor rho;
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng(derive_seed(config.seed, {point, i}));
      EffectiveChannel eff;
      int l0 = 0;
      if (cluster) {
        const ClusterChannel h = cluster_channel(config.cluster, rx_array, tx_array, cycles, n_div, rng);
        eff = effective_channel(h, setup.schedule, tx_book, rx_book);
        l0 = strongest_direction(eff);
      } else {
        l0 = rng.uniform_int(0, dirs - 1);
        eff = effective_channel(ideal_beamspace_channel(l0, fading_process(cycles, n_div, rng), cycles, n_div), dirs);
      }
      synthesize_into(batch, signals, eff, snr, rng);
      correlations_into(rho, batch, signals);
      const GlrtResult g = glrt(rho, setup.dof);
      missed[i] = decide(g.statistic, threshold) == Decision::Absent || g.l_hat != l0;
    }
  });

  PmdPoint p;
  p.option = setup.option.name();
  p.phase = setup.phase;
  p.t_sig = setup.t_sig;
  p.snr_db = snr_db;
  p.cycles = cycles;
  p.trials = trials;
  for (unsigned char m : missed) p.misses += m;
  p.pmd = static_cast<double>(p.misses) / trials;
  p.ci95 = wilson_half_width(p.misses, trials);
  p.threshold = threshold;
  return p;
}

std::vector<PmdPoint> run_pmd(const DesignOption& option, Phase phase, double snr_db, double t_sig,
                              const std::vector<int>& cycles, int trials, const ExperimentConfig& config) {
  const LinkSetup setup = link_setup(config, option, phase, t_sig);
  std::vector<PmdPoint> out;
  out.reserve(cycles.size());
  for (int k : cycles) out.push_back(estimate_pmd(config, setup, snr_db, k, trials));
  return out;
}

MinCycles min_cycles(const DesignOption& option, Phase phase, double snr_db, double t_sig, double pmd_target,
                     const ExperimentConfig& config) {
  if (!(pmd_target > 0.0 && pmd_target < 1.0)) throw std::invalid_argument("pmd target must be in (0, 1)");
  const LinkSetup setup = link_setup(config, option, phase, t_sig);
  const int cap = config.max_cycles;

  MinCycles out;
  std::map<int, PmdPoint> probed;
  auto meets = [&](int k) {
    auto it = probed.find(k);
    if (it == probed.end()) {
      it = probed.emplace(k, estimate_pmd(config, setup, snr_db, k, config.trials)).first;
      out.probes.push_back(it->second);
    }
    return it->second.pmd <= pmd_target;
  };

  // Invariant: lo fails, hi meets.
  int lo = 0;
  int hi = 1;
  while (!meets(hi)) {
    lo = hi;
    if (hi >= cap) return out;
    hi = std::min(cap, 2 * hi);
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (meets(mid) ? hi : lo) = mid;
  }
  out.k_star = hi;
  out.achievable = true;
  out.pmd = probed.at(hi).pmd;
  return out;
}

// --- delay ------------------------------------------------------------------

DelayCurve run_delay_curve(const DesignOption& option, Phase phase, PercentileTag percentile, double t_sig,
                           const std::vector<double>& phi_grid, const ExperimentConfig& config) {
  for (double phi : phi_grid)
    if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("overhead grid entries must be in (0, 1]");
  DelayCurve c;
  c.option = option.name();
  c.phase = phase;
  c.percentile = percentile;
  c.t_sig = t_sig;
  c.snr_db = operating_snr_db(config, phase, percentile);
  c.slots = link_setup(config, option, phase, t_sig).slots;
  const MinCycles mc = min_cycles(option, phase, c.snr_db, t_sig, config.pmd_target, config);
  c.k_star = mc.k_star;
  c.achievable = mc.achievable;
  for (double phi : phi_grid) {
    const double d =
        mc.achievable ? detection_delay(mc.k_star, c.slots, t_sig, phi) : std::numeric_limits<double>::infinity();
    c.points.push_back({phi, d});
  }
  return c;
}

std::vector<BoundPoint> run_bounds(const DelayBoundParams& base, const std::vector<double>& phi_grid) {
  std::vector<BoundPoint> out;
  for (ReceiverArch arch : {ReceiverArch::Analog, ReceiverArch::Digital}) {
    for (bool directional : {false, true}) {
      for (double phi : phi_grid) {
        DelayBoundParams p = base;
        p.phi = phi;
        p.g_tx_sync = directional ? p.g_tx : 1.0;
        out.push_back({arch, directional, phi, sync_delay_bound(p, arch)});
      }
    }
  }
  return out;
}

}  // namespace mmia
