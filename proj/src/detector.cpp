// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/detector.hpp"

#include <cmath>
#include <stdexcept>

namespace mmia {

double correlation(std::span<const Complex> s, std::span<const Complex> r) {
  if (s.size() != r.size()) throw std::invalid_argument("correlation: vector sizes differ");
  Complex cross{};
  double s_energy = 0.0;
  double r_energy = 0.0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    cross += std::conj(s[m]) * r[m];
    s_energy += std::norm(s[m]);
    r_energy += std::norm(r[m]);
  }
  if (s_energy == 0.0 || r_energy == 0.0) throw std::invalid_argument("correlation: zero-norm input");
  const double rho = std::norm(cross) / (s_energy * r_energy);
  return std::min(rho, kMaxCorrelation);
}

CorrelationTensor CorrelationTensor::zeros(int cycles, int directions, int n_div) {
  CorrelationTensor t{cycles, directions, n_div, {}};
  t.rho.assign(static_cast<std::size_t>(cycles) * directions * n_div, 0.0);
  return t;
}

void correlations_into(CorrelationTensor& out, const ReceivedBatch& batch, const SubsignalSet& signals) {
  if (batch.n_div != signals.n_div || batch.dof != signals.dof)
    throw std::invalid_argument("batch does not match the subsignal set");
  out.cycles = batch.cycles;
  out.directions = batch.directions;
  out.n_div = batch.n_div;
  const std::size_t slots = static_cast<std::size_t>(batch.cycles) * batch.directions * batch.n_div;
  out.rho.resize(slots);
  for (std::size_t i = 0; i < slots; ++i) {
    const auto& s = signals.signals[i % batch.n_div];
    out.rho[i] = correlation(s, {batch.samples.data() + i * batch.dof, static_cast<std::size_t>(batch.dof)});
  }
}

CorrelationTensor correlations(const ReceivedBatch& batch, const SubsignalSet& signals) {
  CorrelationTensor t;
  correlations_into(t, batch, signals);
  return t;
}

GlrtResult glrt(const CorrelationTensor& rho, int dof) {
  if (rho.directions < 1) throw std::invalid_argument("glrt needs at least one direction");
  GlrtResult best;
  double best_sum = 0.0;
  for (int l = 0; l < rho.directions; ++l) {
    double sum = 0.0;
    for (int k = 0; k < rho.cycles; ++k)
      for (int d = 0; d < rho.n_div; ++d) sum += std::log1p(-rho.at(k, l, d));
    if (l == 0 || sum < best_sum) {
      best_sum = sum;
      best.l_hat = l;
    }
  }
  best.statistic = -static_cast<double>(dof) * best_sum;
  if (best.statistic == 0.0) best.statistic = 0.0;  // normalize -0
  return best;
}

Decision decide(double statistic, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("threshold must be non-negative");
  return statistic >= threshold ? Decision::Present : Decision::Absent;
}

DetectionOutcome detect(const ReceivedBatch& batch, const SubsignalSet& signals, double threshold) {
  const GlrtResult g = glrt(correlations(batch, signals), batch.dof);
  return {g.l_hat, g.statistic, threshold, decide(g.statistic, threshold)};
}

}  // namespace mmia
