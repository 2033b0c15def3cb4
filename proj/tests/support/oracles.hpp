// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors
//
// Test-only reference computations. Nothing here is used by the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/gamma.hpp>

namespace mmia::oracle {

/// One-sample Kolmogorov-Smirnov distance against a continuous CDF.
inline double ks_distance(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

/// Critical two-sample KS distance at significance alpha.
inline double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

inline double gamma_cdf(double shape, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::cdf(boost::math::gamma_distribution<double>(shape, 1.0), x);
}

/// Upper quantile of Gamma(shape, 1): P(X > q) = p.
inline double gamma_upper_quantile(double shape, double p) {
  return boost::math::quantile(boost::math::complement(boost::math::gamma_distribution<double>(shape, 1.0), p));
}

/// Frequency bounds at three binomial standard deviations.
inline std::pair<double, double> three_sigma(double p, long long n) {
  const double s = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {p - s, p + s};
}

}  // namespace mmia::oracle
