// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mmia/common.hpp"

namespace mmia {

/// Uniform planar array. Elements are indexed row-major: n = row * cols + col.
struct ArrayGeometry {
  int rows = 1;
  int cols = 1;
  double spacing = 0.5;  ///< element spacing in wavelengths

  int size() const { return rows * cols; }
  void validate() const;
};

/// Unit-norm array response for a plane wave from (azimuth, elevation).
/// Element (r, c) has phase 2*pi*spacing*(r*sin(el) + c*cos(el)*sin(az)); element 0 has phase 0.
Eigen::VectorXcd upa_steering(const ArrayGeometry& geometry, double azimuth, double elevation);

/// Orthonormal beamspace directions for a UPA: the Kronecker product of the
/// row and column DFT bases. Column i of `vectors` is direction i = p * cols + q.
struct BeamCodebook {
  ArrayGeometry geometry;
  Eigen::MatrixXcd vectors;

  int size() const { return static_cast<int>(vectors.cols()); }
  Eigen::VectorXcd direction(int index) const { return vectors.col(index); }
};

BeamCodebook beamspace_codebook(const ArrayGeometry& geometry);

/// Physical (azimuth, elevation) whose steering vector coincides with beamspace
/// direction `index`, if that grid point lies in visible space.
struct Angles {
  double azimuth = 0.0;
  double elevation = 0.0;
};
std::optional<Angles> beamspace_angles(const ArrayGeometry& geometry, int index);

enum class TxMode { Omni, Directional };
enum class RxMode { Omni, Analog, Hybrid, Digital };

/// One of the five initial-access design combinations. The tag fixes the
/// default transmit/receive modes; receive modes may be overridden (e.g. a
/// hybrid UE with `ue_chains` RF chains).
struct DesignOption {
  enum class Tag { DDO, DDD, ODD, ODDig, ODigDig };

  Tag tag = Tag::DDO;
  TxMode sync_tx = TxMode::Directional;
  RxMode sync_rx = RxMode::Analog;  ///< UE receiver during Sync
  RxMode ra_rx = RxMode::Omni;      ///< BS receiver during RA
  int ue_chains = 1;
  int bs_chains = 1;

  static DesignOption make(Tag tag);
  static DesignOption parse(std::string_view name);
  std::string name() const;
  static const std::vector<Tag>& all_tags();
};

/// Sentinels for BeamPair fields.
inline constexpr int kOmniBeam = -1;   ///< omni-directional / fixed pattern, no scanning
inline constexpr int kAllBeams = -2;   ///< digital receiver: every beamspace direction at once
inline constexpr int kFixedBeam = -3;  ///< transmitter uses its already-learned direction

struct BeamPair {
  int tx = kOmniBeam;
  int rx = kOmniBeam;
  friend bool operator==(const BeamPair&, const BeamPair&) = default;
};

/// Per-cycle scan: `pairs` has one entry per transmission (L = pairs.size()).
/// Entries with rx == kAllBeams fan out to one detection hypothesis per RX
/// beamspace direction; `hypotheses()` lists them in order.
struct ScanSchedule {
  Phase phase = Phase::Sync;
  std::vector<BeamPair> pairs;
  int tx_elements = 1;
  int rx_elements = 1;
  bool tx_directional = false;  ///< TX applies array gain (directional scan or learned beam)
  bool rx_directional = false;  ///< RX applies array gain
  int rx_chains = 1;            ///< parallel RF chains at the receiver (hybrid)

  int L() const { return static_cast<int>(pairs.size()); }
  std::vector<BeamPair> hypotheses() const;
  int hypothesis_count() const;
  /// Time slots needed per scan cycle when `rx_chains` pairs are measured in parallel.
  int slots() const;
  /// Partition of pair indices into consecutive slots of at most `rx_chains` pairs.
  std::vector<std::vector<int>> slot_groups() const;
  /// Beamforming gain G_tx * G_rx on the aligned pair.
  double aligned_gain() const;
};

ScanSchedule scan_schedule(const DesignOption& option, Phase phase, const ArrayGeometry& bs_array,
                           const ArrayGeometry& ue_array);

}  // namespace mmia
