// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include <boost/random/normal_distribution.hpp>

#include "mmia/common.hpp"

namespace mmia {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic seed for a sub-stream identified by a path of integers,
/// e.g. derive_seed(master, {point_id, trial}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// FNV-1a hash of a label, for turning experiment-point descriptors into stream ids.
std::uint64_t label_id(std::string_view label);

/// A single random stream. Not shared between threads; Monte Carlo trials
/// each construct their own from derive_seed().
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() { return normal_(engine_); }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  Complex complex_normal(double variance = 1.0) {
    const double scale = std::sqrt(0.5 * variance);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {scale * re, scale * im};
  }

  bool bernoulli(double p) { return uniform() < p; }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  int poisson(double mean) { return std::poisson_distribution<int>(mean)(engine_); }
  double exponential(double rate = 1.0) { return std::exponential_distribution<double>(rate)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  boost::random::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mmia
