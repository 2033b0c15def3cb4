// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors
//
// mmia: command-line driver for the initial-access experiments.

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mmia/calibration.hpp"
#include "mmia/config.hpp"
#include "mmia/delay.hpp"
#include "mmia/experiments.hpp"
#include "mmia/results.hpp"

namespace fs = std::filesystem;
using namespace mmia;

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::optional<int> trials;
  std::optional<std::string> channel;
  std::optional<unsigned> threads;
  std::optional<std::string> threshold_cache;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "master seed");
  app->add_option("--out", c.out, "output directory")->capture_default_str();
  app->add_option("--trials", c.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
  app->add_option("--channel", c.channel, "channel model")->check(CLI::IsMember({"ideal", "cluster"}));
  app->add_option("--threads", c.threads, "worker threads (0: all cores)");
  app->add_option("--threshold-cache", c.threshold_cache, "JSON file caching calibrated thresholds");
}

ExperimentConfig resolve(const Common& c) {
  ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : load_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  if (c.trials) cfg.trials = *c.trials;
  if (c.channel) cfg.channel = parse_channel_mode(*c.channel);
  if (c.threads) cfg.threads = *c.threads;
  if (c.threshold_cache) cfg.threshold_cache = *c.threshold_cache;
  cfg.validate();
  return cfg;
}

std::vector<DesignOption> options_or_all(const std::vector<std::string>& names) {
  std::vector<DesignOption> out;
  if (names.empty()) {
    for (auto tag : DesignOption::all_tags()) out.push_back(DesignOption::make(tag));
  } else {
    for (const auto& n : names) out.push_back(DesignOption::parse(n));
  }
  return out;
}

std::vector<double> tsig_or_config(const std::vector<double>& tsig_us, const ExperimentConfig& cfg) {
  return tsig_us.empty() ? cfg.t_sig_us : tsig_us;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmia: directional initial-access link-level simulator"};
  app.set_version_flag("--version", MMIA_VERSION);
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> option_names;
  std::string phase_name = "sync";
  std::vector<double> tsig_us;
  std::vector<std::string> percentiles;
  std::vector<double> snr_db;
  std::vector<int> cycles;
  std::optional<int> n_ues;
  std::vector<double> phi_grid;

  auto add_link = [&](CLI::App* sub, bool multi_option) {
    auto* o = sub->add_option("--option", option_names, "design option (DDO|DDD|ODD|ODDig|ODigDig)")->delimiter(',');
    if (!multi_option) o->expected(1);
    sub->add_option("--phase", phase_name, "sync|ra")->capture_default_str();
    sub->add_option("--tsig-us", tsig_us, "signal duration in microseconds")->delimiter(',');
  };

  // snr-dist
  auto* snr = app.add_subcommand("snr-dist", "omni SNR distribution and operating percentiles");
  add_common(snr, common);
  snr->add_option("--n-ues", n_ues, "number of dropped UEs");

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "noise-only threshold calibration");
  add_common(cal, common);
  add_link(cal, true);
  cal->add_option("--k", cycles, "scan cycles")->delimiter(',');

  // pmd
  auto* pmd = app.add_subcommand("pmd", "misdetection probability versus SNR and K");
  add_common(pmd, common);
  add_link(pmd, false);
  pmd->add_option("--snr-db", snr_db, "omni SNR points in dB")->delimiter(',');
  pmd->add_option("--percentile", percentiles, "operating points (1%|5%|50%|high)")->delimiter(',');
  pmd->add_option("--k", cycles, "scan cycles")->delimiter(',');

  // min-cycles
  auto* mc = app.add_subcommand("min-cycles", "smallest K meeting the misdetection target");
  add_common(mc, common);
  add_link(mc, true);
  mc->add_option("--percentile", percentiles, "operating points (1%|5%|50%|high)")->delimiter(',');

  // delay-curve
  auto* dc = app.add_subcommand("delay-curve", "detection delay versus overhead");
  add_common(dc, common);
  add_link(dc, true);
  dc->add_option("--percentile", percentiles, "operating points (1%|5%|50%|high)")->delimiter(',');
  dc->add_option("--phi", phi_grid, "overhead grid")->delimiter(',');

  // bounds
  DelayBoundParams bp;
  double gamma_sig_db = linear_to_db(bp.gamma_sig);
  double gamma_tgt_db = linear_to_db(bp.gamma_tgt);
  double tmin_us = bp.t_sig_min * 1e6;
  auto* bd = app.add_subcommand("bounds", "analog and digital sync delay lower bounds");
  add_common(bd, common);
  bd->add_option("--g-rx", bp.g_rx, "receive array gain")->capture_default_str();
  bd->add_option("--g-tx", bp.g_tx, "transmit array gain")->capture_default_str();
  bd->add_option("--gamma-sig-db", gamma_sig_db, "required accumulated SNR (dB)")->capture_default_str();
  bd->add_option("--gamma-tgt-db", gamma_tgt_db, "target beamformed SNR (dB)")->capture_default_str();
  bd->add_option("--tmin-us", tmin_us, "minimum signal duration (us)")->capture_default_str();
  bd->add_option("--phi", phi_grid, "overhead grid")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = resolve(common);
    const fs::path out = common.out;
    fs::create_directories(out);
    const std::string command = app.get_subcommands().front()->get_name();
    std::vector<std::string> written;
    const Phase phase = parse_phase(phase_name);

    if (snr->parsed()) {
      const std::uint64_t seed = common.seed ? *common.seed : cfg.snr_seed;
      const SnrDistribution dist = run_snr_distribution(cfg, n_ues.value_or(cfg.n_ues), seed);
      write_snr_csv(out / "snr_percentiles.csv", out / "snr_samples.csv", dist, cfg);
      written = {"snr_percentiles.csv", "snr_samples.csv"};
      for (auto dir : {LinkDirection::Downlink, LinkDirection::Uplink})
        fmt::print("{}: 1% {:.2f} dB, 5% {:.2f} dB, 50% {:.2f} dB\n", dir == LinkDirection::Downlink ? "DL" : "UL",
                   dist.percentile(dir, 0.01), dist.percentile(dir, 0.05), dist.percentile(dir, 0.5));
    } else if (cal->parsed()) {
      std::vector<ThresholdRow> rows;
      const std::vector<int> ks = cycles.empty() ? std::vector<int>{1} : cycles;
      for (const auto& opt : options_or_all(option_names))
        for (double t : tsig_or_config(tsig_us, cfg))
          for (int k : ks) {
            const LinkSetup s = link_setup(cfg, opt, phase, t * 1e-6);
            const double th = detection_threshold(cfg, s, k);
            rows.push_back({opt.name(), phase, s.shape(k, cfg.n_div), s.target_pfa, th});
            fmt::print("{} {} T_sig={}us K={} H={}: t = {:.4f}\n", opt.name(), to_string(phase), t, k, s.hypotheses,
                       th);
          }
      write_threshold_csv(out / "thresholds.csv", rows);
      written = {"thresholds.csv"};
    } else if (pmd->parsed()) {
      const DesignOption opt = DesignOption::parse(option_names.empty() ? "DDO" : option_names.front());
      const double t = (tsig_us.empty() ? cfg.t_sig_us.front() : tsig_us.front()) * 1e-6;
      std::vector<double> snrs = snr_db;
      for (const auto& p : percentiles) snrs.push_back(operating_snr_db(cfg, phase, parse_percentile(p)));
      if (snrs.empty()) throw std::invalid_argument("pmd needs --snr-db or --percentile");
      const std::vector<int> ks = cycles.empty() ? std::vector<int>{1} : cycles;
      std::vector<PmdPoint> points;
      for (double s : snrs) {
        auto pts = run_pmd(opt, phase, s, t, ks, cfg.trials, cfg);
        points.insert(points.end(), pts.begin(), pts.end());
      }
      for (const auto& p : points)
        fmt::print("{} {} snr={:.2f} dB K={}: pmd={:.4f} +/- {:.4f}\n", p.option, to_string(p.phase), p.snr_db,
                   p.cycles, p.pmd, p.ci95);
      write_pmd_csv(out / "pmd.csv", points);
      written = {"pmd.csv"};
    } else if (mc->parsed() || dc->parsed()) {
      std::vector<PercentileTag> tags;
      for (const auto& p : percentiles) tags.push_back(parse_percentile(p));
      if (tags.empty()) tags = {PercentileTag::P1, PercentileTag::P5, PercentileTag::High};
      const std::vector<double> grid = dc->parsed() && !phi_grid.empty() ? phi_grid
                                       : dc->parsed()                   ? cfg.phi_grid
                                                                        : std::vector<double>{cfg.phi};
      std::vector<DelayCurve> curves;
      for (const auto& opt : options_or_all(option_names))
        for (double t : tsig_or_config(tsig_us, cfg))
          for (PercentileTag tag : tags) {
            curves.push_back(run_delay_curve(opt, phase, tag, t * 1e-6, grid, cfg));
            const DelayCurve& c = curves.back();
            fmt::print("{} {} {} T_sig={}us snr={:.2f} dB L={}: K*={}\n", c.option, to_string(phase),
                       to_string(tag), t, c.snr_db, c.slots, c.achievable ? std::to_string(c.k_star) : "NA");
          }
      write_delay_csv(out / "delay.csv", curves);
      written = {"delay.csv"};
    } else if (bd->parsed()) {
      bp.gamma_sig = db_to_linear(gamma_sig_db);
      bp.gamma_tgt = db_to_linear(gamma_tgt_db);
      bp.t_sig_min = tmin_us * 1e-6;
      bp.w_tot = cfg.system.bandwidth_hz;
      const auto points = run_bounds(bp, phi_grid.empty() ? cfg.phi_grid : phi_grid);
      write_bounds_csv(out / "bounds.csv", points);
      written = {"bounds.csv"};
    }
    write_manifest(out / "manifest.json", command, cfg, written);
  } catch (const std::exception& e) {
    std::cerr << "mmia: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
