// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/distributions/binomial.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mmia/detector.hpp"
#include "mmia/parallel.hpp"
#include "mmia/random.hpp"
#include "mmia/waveform.hpp"

namespace mmia {

void HypothesisBudget::validate() const {
  if (n_sig < 1 || n_fo < 1 || !(n_dly > 0.0)) throw std::invalid_argument("hypothesis counts must be positive");
  if (!(r_fa > 0.0)) throw std::invalid_argument("false-alarm rate must be positive");
  if (p_fa() > 1.0) throw std::invalid_argument("false-alarm budget exceeds one per hypothesis");
}

double delay_hypotheses(double w_sig, double window_s) {
  if (!(w_sig > 0.0) || !(window_s > 0.0)) throw std::invalid_argument("delay_hypotheses needs positive inputs");
  return 2.0 * w_sig * window_s;
}

double round_trip_time(double cell_radius_m) {
  if (!(cell_radius_m > 0.0)) throw std::invalid_argument("cell radius must be positive");
  return 2.0 * cell_radius_m / kSpeedOfLight;
}

int frequency_offset_hypotheses(double ppm, double carrier_hz, double doppler_hz, double t_sig_max) {
  if (ppm < 0.0 || !(carrier_hz > 0.0) || doppler_hz < 0.0 || !(t_sig_max > 0.0))
    throw std::invalid_argument("frequency_offset_hypotheses: invalid inputs");
  const double df_max = ppm * 1e-6 * carrier_hz + doppler_hz;
  const double df = 1.0 / (4.0 * t_sig_max);
  return std::max(1, static_cast<int>(std::lround(2.0 * df_max / df)));
}

HypothesisBudget hypothesis_budget(Phase phase, double window_s, double w_sig, double r_fa, int n_sig, int n_fo) {
  HypothesisBudget b{phase, n_sig, delay_hypotheses(w_sig, window_s), n_fo, r_fa};
  b.validate();
  return b;
}

std::string DetectorShape::label() const { return fmt::format("M{}_K{}_H{}_D{}", dof, cycles, directions, n_div); }

void DetectorShape::validate() const {
  if (dof < 2) throw std::invalid_argument("detector needs at least 2 degrees of freedom");
  if (cycles < 1 || directions < 1 || n_div < 1) throw std::invalid_argument("detector dimensions must be positive");
}

NullSample simulate_null(const DetectorShape& shape, int n_trials, std::uint64_t seed, unsigned threads) {
  shape.validate();
  if (n_trials < 1) throw std::invalid_argument("simulate_null needs at least one trial");
  const SubsignalSet signals = make_subsignals(shape.dof, shape.n_div, 0, seed);

  NullSample out{shape, seed, std::vector<double>(static_cast<std::size_t>(n_trials))};
  parallel_blocks(out.statistics.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
    ReceivedBatch batch;
    CorrelationTensor rho;
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng(derive_seed(seed, {i}));
      synthesize_noise_into(batch, shape.cycles, shape.directions, shape.n_div, shape.dof, rng);
      correlations_into(rho, batch, signals);
      out.statistics[i] = glrt(rho, shape.dof).statistic;
    }
  });
  std::sort(out.statistics.begin(), out.statistics.end(), std::greater<>());
  return out;
}

ThresholdFit fit_threshold(const NullSample& sample, double target_pfa, double tail_fraction) {
  if (!(target_pfa > 0.0 && target_pfa <= 1.0)) throw std::invalid_argument("target false-alarm must be in (0, 1]");
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) throw std::invalid_argument("tail fraction must be in (0, 1)");
  const int n = static_cast<int>(sample.statistics.size());
  if (n < kMinCalibrationTrials)
    throw std::invalid_argument(fmt::format("calibration needs at least {} trials, got {}", kMinCalibrationTrials, n));

  ThresholdFit fit;
  fit.target_pfa = target_pfa;
  fit.n_trials = n;
  fit.tail_fraction = tail_fraction;

  const int n_tail = static_cast<int>(std::floor(tail_fraction * n));
  fit.tail_points.reserve(n_tail);
  for (int i = 1; i <= n_tail; ++i)
    fit.tail_points.emplace_back(sample.statistics[i - 1], std::log(static_cast<double>(i) / n));

  // Least squares on a centred, scaled abscissa.
  double mu = 0.0;
  for (const auto& [t, ls] : fit.tail_points) mu += t;
  mu /= n_tail;
  double scale = 0.0;
  for (const auto& [t, ls] : fit.tail_points) scale = std::max(scale, std::abs(t - mu));
  const bool flat = !(scale > 0.0);
  if (flat) scale = 1.0;

  Eigen::MatrixXd A(n_tail, 3);
  Eigen::VectorXd y(n_tail);
  for (int i = 0; i < n_tail; ++i) {
    const double x = (fit.tail_points[i].first - mu) / scale;
    A(i, 0) = 1.0;
    A(i, 1) = x;
    A(i, 2) = x * x;
    y(i) = fit.tail_points[i].second;
  }
  Eigen::Vector3d q = Eigen::Vector3d::Zero();
  if (!flat) {
    q = A.colPivHouseholderQr().solve(y);
    // Log-concave tail: a convex fit is replaced by the best line (c = 0).
    if (q(2) > 0.0) {
      q.head<2>() = A.leftCols<2>().colPivHouseholderQr().solve(y);
      q(2) = 0.0;
    }
  }
  const double a = q(0), b = q(1), c = q(2);
  fit.coefficients = {a - b * mu / scale + c * mu * mu / (scale * scale), b / scale - 2.0 * c * mu / (scale * scale),
                      c / (scale * scale)};

  if (target_pfa == 1.0) {
    fit.threshold = 0.0;
    return fit;
  }
  if (target_pfa >= tail_fraction) {
    const int i = std::clamp(static_cast<int>(std::ceil(target_pfa * n)), 1, n);
    fit.threshold = sample.statistics[i - 1];
    return fit;
  }

  // Slope in x is b + 2 c x; it must be negative across the fitted window.
  const double x_lo = (fit.tail_points.back().first - mu) / scale;
  const double x_hi = (fit.tail_points.front().first - mu) / scale;
  if (flat || !(b + 2.0 * c * x_lo < 0.0) || !(b + 2.0 * c * x_hi < 0.0))
    throw std::runtime_error("degenerate tail fit: fitted survival is not decreasing");

  const double rhs = a - std::log(target_pfa);  // c x^2 + b x + rhs = 0
  double x = 0.0;
  if (std::abs(c) <= 1e-12 * std::abs(b)) {
    x = -rhs / b;
  } else {
    const double disc = b * b - 4.0 * c * rhs;
    if (disc < 0.0) throw std::runtime_error("degenerate tail fit: target false-alarm not reachable");
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (b + std::copysign(sq, b));
    const double roots[2] = {qq / c, rhs / qq};
    bool found = false;
    for (double r : roots) {
      if (b + 2.0 * c * r < 0.0 && (!found || r > x)) {
        x = r;
        found = true;
      }
    }
    if (!found) throw std::runtime_error("degenerate tail fit: no decreasing solution");
  }
  fit.threshold = mu + scale * x;
  fit.extrapolated = true;
  return fit;
}

ThresholdFit calibrate_threshold(const DetectorShape& shape, double target_pfa, int n_trials, std::uint64_t seed,
                                 double tail_fraction, unsigned threads) {
  if (n_trials < kMinCalibrationTrials)
    throw std::invalid_argument(
        fmt::format("calibration needs at least {} trials, got {}", kMinCalibrationTrials, n_trials));
  if (!(target_pfa > 0.0 && target_pfa <= 1.0)) throw std::invalid_argument("target false-alarm must be in (0, 1]");
  return fit_threshold(simulate_null(shape, n_trials, seed, threads), target_pfa, tail_fraction);
}

FalseAlarmCount measure_false_alarms(const DetectorShape& shape, double threshold, int n_trials, std::uint64_t seed,
                                     unsigned threads) {
  const NullSample s = simulate_null(shape, n_trials, seed, threads);
  FalseAlarmCount out{0, n_trials};
  for (double t : s.statistics) out.alarms += decide(t, threshold) == Decision::Present;
  return out;
}

std::pair<long long, long long> binomial_interval95(long long n, double p) {
  if (n < 1 || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_interval95: invalid inputs");
  if (p == 0.0) return {0, 0};
  if (p == 1.0) return {n, n};
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  const auto lo = static_cast<long long>(std::llround(boost::math::quantile(dist, 0.025)));
  const auto hi = static_cast<long long>(std::llround(boost::math::quantile(boost::math::complement(dist, 0.025))));
  return {lo, hi};
}

// --- cache ------------------------------------------------------------------

std::string ThresholdCache::key(const DetectorShape& shape, double target_pfa, std::uint64_t seed, int n_trials) {
  return fmt::format("{}_P{:.6e}_S{}_N{}", shape.label(), target_pfa, seed, n_trials);
}

std::optional<ThresholdFit> ThresholdCache::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ThresholdCache::insert(const std::string& key, const ThresholdFit& fit) { entries_[key] = fit; }

void ThresholdCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;
  const auto j = nlohmann::json::parse(in);
  for (const auto& [k, v] : j.at("entries").items()) {
    ThresholdFit fit;
    fit.threshold = v.at("threshold").get<double>();
    fit.target_pfa = v.at("target_pfa").get<double>();
    fit.coefficients = v.at("coefficients").get<std::array<double, 3>>();
    fit.n_trials = v.at("n_trials").get<int>();
    fit.tail_fraction = v.at("tail_fraction").get<double>();
    fit.extrapolated = v.at("extrapolated").get<bool>();
    entries_[k] = fit;
  }
}

void ThresholdCache::save(const std::filesystem::path& path) const {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [k, fit] : entries_) {
    entries[k] = {{"threshold", fit.threshold},       {"target_pfa", fit.target_pfa},
                  {"coefficients", fit.coefficients}, {"n_trials", fit.n_trials},
                  {"tail_fraction", fit.tail_fraction}, {"extrapolated", fit.extrapolated}};
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write threshold cache " + path.string());
  out << nlohmann::json{{"version", 1}, {"entries", entries}}.dump(2) << '\n';
}

}  // namespace mmia
