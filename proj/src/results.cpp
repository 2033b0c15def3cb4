// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/results.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#ifndef MMIA_VERSION
#define MMIA_VERSION "unknown"
#endif

namespace mmia {

namespace {

// RFC 4180 writer: CRLF records, fields quoted only when needed.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : path_(path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    out_.open(path, std::ios::binary);
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << quote(fields[i]);
    }
    out_ << "\r\n";
    if (!out_) throw std::runtime_error("write failed: " + path_.string());
  }

 private:
  static std::string quote(const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{}", value);
}

void write_pmd_csv(const std::filesystem::path& path, const std::vector<PmdPoint>& points) {
  CsvWriter w(path);
  w.row({"option", "phase", "snr_db", "K", "trials", "pmd", "ci95"});
  for (const auto& p : points)
    w.row({p.option, std::string(to_string(p.phase)), format_number(p.snr_db), std::to_string(p.cycles),
           std::to_string(p.trials), format_number(p.pmd), format_number(p.ci95)});
}

void write_delay_csv(const std::filesystem::path& path, const std::vector<DelayCurve>& curves) {
  CsvWriter w(path);
  w.row({"option", "phase", "percentile", "T_sig_us", "phi", "K_star", "L", "delay_ms"});
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      w.row({c.option, std::string(to_string(c.phase)), std::string(to_string(c.percentile)),
             format_number(std::round(c.t_sig * 1e6 * 1e6) / 1e6), format_number(p.phi),
             c.achievable ? std::to_string(c.k_star) : "NA", std::to_string(c.slots),
             c.achievable ? format_number(p.delay_s * 1e3) : "NA"});
    }
  }
}

void write_snr_csv(const std::filesystem::path& percentiles_path, const std::filesystem::path& samples_path,
                   const SnrDistribution& dist, const ExperimentConfig& config) {
  {
    CsvWriter w(percentiles_path);
    w.row({"direction", "percentile", "gamma0_db"});
    for (auto [name, dir] : {std::pair{"DL", LinkDirection::Downlink}, std::pair{"UL", LinkDirection::Uplink}}) {
      for (PercentileTag tag : {PercentileTag::P1, PercentileTag::P5, PercentileTag::Median, PercentileTag::High})
        w.row({name, std::string(to_string(tag)), format_number(dist.percentile(dir, percentile_fraction(tag, config)))});
    }
  }
  CsvWriter w(samples_path);
  w.row({"rank", "cdf", "dl_db", "ul_db"});
  const std::size_t n = dist.dl_db.size();
  for (std::size_t i = 0; i < n; ++i)
    w.row({std::to_string(i + 1), format_number(static_cast<double>(i + 1) / n), format_number(dist.dl_db[i]),
           format_number(dist.ul_db[i])});
}

void write_bounds_csv(const std::filesystem::path& path, const std::vector<BoundPoint>& points) {
  CsvWriter w(path);
  w.row({"arch", "sync_tx", "phi", "bound_ms"});
  for (const auto& p : points)
    w.row({p.arch == ReceiverArch::Analog ? "analog" : "digital", p.directional_sync ? "directional" : "omni",
           format_number(p.phi), format_number(p.bound_s * 1e3)});
}

void write_threshold_csv(const std::filesystem::path& path, const std::vector<ThresholdRow>& rows) {
  CsvWriter w(path);
  w.row({"option", "phase", "K", "M", "directions", "n_div", "target_pfa", "threshold"});
  for (const auto& r : rows)
    w.row({r.option, std::string(to_string(r.phase)), std::to_string(r.shape.cycles), std::to_string(r.shape.dof),
           std::to_string(r.shape.directions), std::to_string(r.shape.n_div), format_number(r.target_pfa),
           format_number(r.threshold)});
}

void write_manifest(const std::filesystem::path& path, const std::string& command, const ExperimentConfig& config,
                    const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["tool"] = "mmia";
  m["version"] = MMIA_VERSION;
  m["command"] = command;
  m["seed"] = config.seed;
  m["config"] = nlohmann::json::parse(config_to_json(config, -1));
  m["operating_points"] = {
      {"source", "own SNR distribution: n_ues drops with snr.seed"},
      {"sync", "downlink gamma0 percentiles"},
      {"ra", "uplink gamma0 percentiles"},
      {"high", fmt::format("{} quantile of the downlink (uplink for RA) distribution", config.high_percentile)}};
  m["outputs"] = outputs;

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << m.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace mmia
