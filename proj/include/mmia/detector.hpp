// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <span>
#include <vector>

#include "mmia/common.hpp"
#include "mmia/waveform.hpp"

namespace mmia {

/// Upper clamp on the matched-filter correlation so that ln(1 - rho) stays finite.
inline constexpr double kMaxCorrelation = 1.0 - 1e-12;

/// Normalized matched filter |s^* r|^2 / (||s||^2 ||r||^2), clamped to kMaxCorrelation.
/// Throws std::invalid_argument if either vector has zero norm or sizes differ.
double correlation(std::span<const Complex> s, std::span<const Complex> r);

/// rho_{k l d}, stored [(k * directions + l) * n_div + d].
struct CorrelationTensor {
  int cycles = 0;
  int directions = 0;
  int n_div = 0;
  std::vector<double> rho;

  double at(int k, int l, int d) const { return rho[(static_cast<std::size_t>(k) * directions + l) * n_div + d]; }
  double& at(int k, int l, int d) { return rho[(static_cast<std::size_t>(k) * directions + l) * n_div + d]; }

  static CorrelationTensor zeros(int cycles, int directions, int n_div);
};

CorrelationTensor correlations(const ReceivedBatch& batch, const SubsignalSet& signals);
void correlations_into(CorrelationTensor& out, const ReceivedBatch& batch, const SubsignalSet& signals);

struct GlrtResult {
  int l_hat = 0;           ///< 0-based direction estimate; ties go to the lowest index
  double statistic = 0.0;  ///< -M * sum_{k,d} ln(1 - rho_{k l_hat d}) >= 0
};

/// Direction estimate and log-likelihood-ratio statistic. Sums run k-major,
/// d-minor in a fixed order so results are bit-reproducible.
GlrtResult glrt(const CorrelationTensor& rho, int dof);

enum class Decision { Absent, Present };

/// Present iff statistic >= threshold.
Decision decide(double statistic, double threshold);

struct DetectionOutcome {
  int l_hat = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  Decision decision = Decision::Absent;
};

DetectionOutcome detect(const ReceivedBatch& batch, const SubsignalSet& signals, double threshold);

}  // namespace mmia
