// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mmia/calibration.hpp"
#include "mmia/quantization.hpp"

namespace mmia {

using nlohmann::json;

std::string_view to_string(ChannelMode mode) { return mode == ChannelMode::Ideal ? "ideal" : "cluster"; }

ChannelMode parse_channel_mode(std::string_view text) {
  if (text == "ideal") return ChannelMode::Ideal;
  if (text == "cluster") return ChannelMode::Cluster;
  throw std::invalid_argument("unknown channel mode '" + std::string(text) + "' (expected ideal|cluster)");
}

namespace {

// One schema walk shared by the reader and the writer.
template <typename IO>
void visit(IO& io, ExperimentConfig& c) {
  io.field("seed", c.seed);
  io.field("trials", c.trials);
  io.field("calibration_trials", c.calibration_trials);
  io.field("threads", c.threads);
  io.field("threshold_cache", c.threshold_cache);
  io.section("signal", [&] {
    io.field("n_div", c.n_div);
    io.field("t_sig_us", c.t_sig_us);
    io.field("w_sig_hz", c.w_sig_hz);
  });
  io.section("false_alarm", [&] {
    io.field("r_fa", c.r_fa);
    io.field("n_sync", c.n_sync);
    io.field("n_rach", c.n_rach);
    io.field("n_fo", c.n_fo);
    io.field("sync_period_s", c.sync_period_s);
    io.field("cell_radius_m", c.cell_radius_m);
  });
  io.section("arrays", [&] {
    for (auto [name, g] : {std::pair{"bs", &c.bs_array}, std::pair{"ue", &c.ue_array}}) {
      io.section(name, [&] {
        io.field("rows", g->rows);
        io.field("cols", g->cols);
        io.field("spacing", g->spacing);
      });
    }
  });
  io.section("system", [&] {
    SystemParams& s = c.system;
    io.field("carrier_hz", s.carrier_hz);
    io.field("bandwidth_hz", s.bandwidth_hz);
    io.field("dl_tx_power_dbm", s.dl_tx_power_dbm);
    io.field("ul_tx_power_dbm", s.ul_tx_power_dbm);
    io.field("ue_noise_figure_db", s.ue_noise_figure_db);
    io.field("bs_noise_figure_db", s.bs_noise_figure_db);
    io.field("thermal_noise_dbm_hz", s.thermal_noise_dbm_hz);
    io.field("los_decay_m", s.los_decay_m);
    for (auto [name, p] : {std::pair{"los", &s.los}, std::pair{"nlos", &s.nlos}}) {
      io.section(name, [&] {
        io.field("alpha", p->alpha);
        io.field("beta", p->beta);
        io.field("sigma", p->sigma);
      });
    }
  });
  io.section("quantization", [&] {
    io.field("adc_bits_ue", c.adc_bits_ue);
    io.field("adc_bits_bs", c.adc_bits_bs);
  });
  io.section("detection", [&] {
    io.field("pmd_target", c.pmd_target);
    io.field("max_cycles", c.max_cycles);
  });
  io.section("delay", [&] {
    io.field("phi", c.phi);
    io.field("phi_grid", c.phi_grid);
  });
  io.section("snr", [&] {
    io.field("n_ues", c.n_ues);
    io.field("seed", c.snr_seed);
    io.field("min_distance_m", c.min_distance_m);
    io.field("high_percentile", c.high_percentile);
  });
  io.section("channel", [&] {
    io.field("mode", c.channel);
    io.section("cluster", [&] {
      ClusterConfig& k = c.cluster;
      io.field("num_clusters", k.num_clusters);
      io.field("mean_clusters", k.mean_clusters);
      io.field("paths_per_cluster", k.paths_per_cluster);
      io.field("angular_spread_deg", k.angular_spread_deg);
      io.field("rx_az_lo_deg", k.rx_az_lo_deg);
      io.field("rx_az_hi_deg", k.rx_az_hi_deg);
      io.field("rx_el_lo_deg", k.rx_el_lo_deg);
      io.field("rx_el_hi_deg", k.rx_el_hi_deg);
      io.field("tx_az_lo_deg", k.tx_az_lo_deg);
      io.field("tx_az_hi_deg", k.tx_az_hi_deg);
      io.field("tx_el_lo_deg", k.tx_el_lo_deg);
      io.field("tx_el_hi_deg", k.tx_el_hi_deg);
    });
  });
}

struct Writer {
  std::vector<json*> stack;

  template <typename T>
  void field(const char* key, T& value) {
    (*stack.back())[key] = value;
  }
  void field(const char* key, ChannelMode& mode) { (*stack.back())[key] = std::string(to_string(mode)); }
  void field(const char* key, std::optional<int>& value) {
    (*stack.back())[key] = value ? json(*value) : json(nullptr);
  }
  void field(const char* key, std::optional<std::filesystem::path>& value) {
    (*stack.back())[key] = value ? json(value->string()) : json(nullptr);
  }
  template <typename Body>
  void section(const char* key, Body&& body) {
    json& child = (*stack.back())[key] = json::object();
    stack.push_back(&child);
    body();
    stack.pop_back();
  }
};

struct Reader {
  struct Frame {
    const json* node;
    std::string path;
    std::set<std::string> seen;
  };
  std::vector<Frame> stack;

  std::string path_of(const char* key) const {
    return stack.back().path.empty() ? key : stack.back().path + "." + key;
  }

  const json* lookup(const char* key) {
    Frame& f = stack.back();
    f.seen.insert(key);
    const auto it = f.node->find(key);
    return it == f.node->end() ? nullptr : &*it;
  }

  template <typename T>
  void field(const char* key, T& value) {
    if (const json* j = lookup(key)) {
      try {
        value = j->get<T>();
      } catch (const json::exception& e) {
        throw std::invalid_argument("config key '" + path_of(key) + "': " + e.what());
      }
    }
  }
  void field(const char* key, ChannelMode& mode) {
    std::string text(to_string(mode));
    field(key, text);
    mode = parse_channel_mode(text);
  }
  void field(const char* key, std::optional<int>& value) {
    if (const json* j = lookup(key)) {
      if (j->is_null()) {
        value.reset();
      } else {
        int v = 0;
        field(key, v);
        value = v;
      }
    }
  }
  void field(const char* key, std::optional<std::filesystem::path>& value) {
    if (const json* j = lookup(key)) {
      if (j->is_null()) {
        value.reset();
      } else {
        std::string v;
        field(key, v);
        value = v;
      }
    }
  }
  template <typename Body>
  void section(const char* key, Body&& body) {
    const json* j = lookup(key);
    if (!j) return;
    if (!j->is_object()) throw std::invalid_argument("config key '" + path_of(key) + "' must be an object");
    stack.push_back({j, path_of(key), {}});
    body();
    reject_unknown();
    stack.pop_back();
  }
  void reject_unknown() const {
    const Frame& f = stack.back();
    for (const auto& [k, v] : f.node->items())
      if (!f.seen.count(k))
        throw std::invalid_argument("unknown config key '" + (f.path.empty() ? k : f.path + "." + k) + "'");
  }
};

}  // namespace

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid config: ") + what);
  };
  require(trials >= 1, "trials must be >= 1");
  require(calibration_trials >= kMinCalibrationTrials, "calibration_trials must be >= 10000");
  require(n_div >= 1, "signal.n_div must be >= 1");
  require(!t_sig_us.empty(), "signal.t_sig_us must not be empty");
  for (double t : t_sig_us) require(t > 0.0, "signal.t_sig_us entries must be positive");
  require(w_sig_hz > 0.0, "signal.w_sig_hz must be positive");
  require(r_fa > 0.0, "false_alarm.r_fa must be positive");
  require(n_sync >= 1 && n_rach >= 1 && n_fo >= 1, "false_alarm counts must be >= 1");
  require(sync_period_s > 0.0 && cell_radius_m > 0.0, "false_alarm windows must be positive");
  bs_array.validate();
  ue_array.validate();
  require(system.bandwidth_hz > 0.0 && system.carrier_hz > 0.0, "system frequencies must be positive");
  require(adc_bits_ue >= kMinQuantizerBits && adc_bits_ue <= kMaxQuantizerBits, "adc_bits_ue must be in [1, 8]");
  require(adc_bits_bs >= kMinQuantizerBits && adc_bits_bs <= kMaxQuantizerBits, "adc_bits_bs must be in [1, 8]");
  require(pmd_target > 0.0 && pmd_target < 1.0, "detection.pmd_target must be in (0, 1)");
  require(max_cycles >= 1, "detection.max_cycles must be >= 1");
  require(phi > 0.0 && phi <= 1.0, "delay.phi must be in (0, 1]");
  for (double p : phi_grid) require(p > 0.0 && p <= 1.0, "delay.phi_grid entries must be in (0, 1]");
  require(n_ues >= 1, "snr.n_ues must be >= 1");
  require(min_distance_m >= 1.0 && min_distance_m < cell_radius_m, "snr.min_distance_m must be in [1, radius)");
  require(high_percentile > 0.0 && high_percentile < 1.0, "snr.high_percentile must be in (0, 1)");
  require(!cluster.num_clusters || *cluster.num_clusters >= 1, "channel.cluster.num_clusters must be >= 1");
  require(cluster.paths_per_cluster >= 1, "channel.cluster.paths_per_cluster must be >= 1");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config root must be an object");
  ExperimentConfig c;
  Reader r;
  r.stack.push_back({&root, "", {}});
  visit(r, c);
  r.reject_unknown();
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& config, int indent) {
  ExperimentConfig c = config;
  json root = json::object();
  Writer w;
  w.stack.push_back(&root);
  visit(w, c);
  return root.dump(indent);
}

}  // namespace mmia
