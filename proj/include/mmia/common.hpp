// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <cmath>
#include <complex>
#include <string_view>
#include <vector>

namespace mmia {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;

/// Access phase: downlink synchronization (UE detects BS) or uplink random access (BS detects UE).
enum class Phase { Sync, RA };

/// Link direction used for power/noise-figure bookkeeping.
enum class LinkDirection { Downlink, Uplink };

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::string_view to_string(Phase phase);
Phase parse_phase(std::string_view text);

}  // namespace mmia
