// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/beamspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmia {

void ArrayGeometry::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("array must have at least one row and column");
  if (!(spacing > 0.0)) throw std::invalid_argument("element spacing must be positive");
}

Eigen::VectorXcd upa_steering(const ArrayGeometry& geometry, double azimuth, double elevation) {
  geometry.validate();
  if (!std::isfinite(azimuth) || !std::isfinite(elevation))
    throw std::invalid_argument("steering angles must be finite");

  const double u = std::sin(elevation);
  const double v = std::cos(elevation) * std::sin(azimuth);
  const double norm = 1.0 / std::sqrt(static_cast<double>(geometry.size()));
  Eigen::VectorXcd a(geometry.size());
  for (int r = 0; r < geometry.rows; ++r) {
    for (int c = 0; c < geometry.cols; ++c) {
      const double phase = 2.0 * kPi * geometry.spacing * (r * u + c * v);
      a(r * geometry.cols + c) = std::polar(norm, phase);
    }
  }
  return a;
}

namespace {

Eigen::MatrixXcd dft_basis(int n) {
  Eigen::MatrixXcd f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) {
      // exact phase reduction keeps the basis unitary to rounding
      const long long turns = (static_cast<long long>(k) * m) % n;
      f(m, k) = std::polar(norm, 2.0 * kPi * static_cast<double>(turns) / n);
    }
  return f;
}

// Spatial frequency of DFT bin k in cycles per element, wrapped to [-0.5, 0.5).
double wrapped_frequency(int k, int n) {
  double f = static_cast<double>(k) / n;
  if (f >= 0.5) f -= 1.0;
  return f;
}

}  // namespace

BeamCodebook beamspace_codebook(const ArrayGeometry& geometry) {
  geometry.validate();
  const Eigen::MatrixXcd row_basis = dft_basis(geometry.rows);
  const Eigen::MatrixXcd col_basis = dft_basis(geometry.cols);

  BeamCodebook book{geometry, Eigen::MatrixXcd(geometry.size(), geometry.size())};
  for (int p = 0; p < geometry.rows; ++p)
    for (int q = 0; q < geometry.cols; ++q) {
      const int index = p * geometry.cols + q;
      for (int r = 0; r < geometry.rows; ++r)
        for (int c = 0; c < geometry.cols; ++c)
          book.vectors(r * geometry.cols + c, index) = row_basis(r, p) * col_basis(c, q);
    }
  return book;
}

std::optional<Angles> beamspace_angles(const ArrayGeometry& geometry, int index) {
  geometry.validate();
  if (index < 0 || index >= geometry.size()) throw std::out_of_range("beamspace index out of range");
  const int p = index / geometry.cols;
  const int q = index % geometry.cols;
  const double u = wrapped_frequency(p, geometry.rows) / geometry.spacing;
  const double v = wrapped_frequency(q, geometry.cols) / geometry.spacing;
  if (std::abs(u) > 1.0) return std::nullopt;
  const double cos_el = std::sqrt(std::max(0.0, 1.0 - u * u));
  if (std::abs(v) > cos_el) return std::nullopt;
  if (cos_el == 0.0) return Angles{0.0, std::asin(u)};
  return Angles{std::asin(v / cos_el), std::asin(u)};
}

// --- design options -------------------------------------------------------

DesignOption DesignOption::make(Tag tag) {
  DesignOption o;
  o.tag = tag;
  switch (tag) {
    case Tag::DDO:
      o.sync_tx = TxMode::Directional, o.sync_rx = RxMode::Analog, o.ra_rx = RxMode::Omni;
      break;
    case Tag::DDD:
      o.sync_tx = TxMode::Directional, o.sync_rx = RxMode::Analog, o.ra_rx = RxMode::Analog;
      break;
    case Tag::ODD:
      o.sync_tx = TxMode::Omni, o.sync_rx = RxMode::Analog, o.ra_rx = RxMode::Analog;
      break;
    case Tag::ODDig:
      o.sync_tx = TxMode::Omni, o.sync_rx = RxMode::Analog, o.ra_rx = RxMode::Digital;
      break;
    case Tag::ODigDig:
      o.sync_tx = TxMode::Omni, o.sync_rx = RxMode::Digital, o.ra_rx = RxMode::Digital;
      break;
  }
  return o;
}

const std::vector<DesignOption::Tag>& DesignOption::all_tags() {
  static const std::vector<Tag> tags{Tag::DDO, Tag::DDD, Tag::ODD, Tag::ODDig, Tag::ODigDig};
  return tags;
}

std::string DesignOption::name() const {
  switch (tag) {
    case Tag::DDO: return "DDO";
    case Tag::DDD: return "DDD";
    case Tag::ODD: return "ODD";
    case Tag::ODDig: return "ODDig";
    case Tag::ODigDig: return "ODigDig";
  }
  return "?";
}

DesignOption DesignOption::parse(std::string_view name) {
  for (Tag t : all_tags()) {
    DesignOption o = make(t);
    if (o.name() == name) return o;
  }
  throw std::invalid_argument("unknown design option '" + std::string(name) +
                              "' (expected DDO|DDD|ODD|ODDig|ODigDig)");
}

// --- scan schedules -------------------------------------------------------

std::vector<BeamPair> ScanSchedule::hypotheses() const {
  std::vector<BeamPair> out;
  for (const BeamPair& p : pairs) {
    if (p.rx == kAllBeams) {
      for (int r = 0; r < rx_elements; ++r) out.push_back({p.tx, r});
    } else {
      out.push_back(p);
    }
  }
  return out;
}

int ScanSchedule::hypothesis_count() const {
  int n = 0;
  for (const BeamPair& p : pairs) n += (p.rx == kAllBeams) ? rx_elements : 1;
  return n;
}

int ScanSchedule::slots() const { return (L() + rx_chains - 1) / rx_chains; }

std::vector<std::vector<int>> ScanSchedule::slot_groups() const {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < L(); ++i) {
    if (i % rx_chains == 0) groups.emplace_back();
    groups.back().push_back(i);
  }
  return groups;
}

double ScanSchedule::aligned_gain() const {
  const double g_tx = tx_directional ? tx_elements : 1.0;
  const double g_rx = rx_directional ? rx_elements : 1.0;
  return g_tx * g_rx;
}

namespace {

// Appends the receive side of a scan for one transmit beam.
void append_rx(std::vector<BeamPair>& pairs, int tx, RxMode mode, int rx_elements) {
  switch (mode) {
    case RxMode::Omni: pairs.push_back({tx, kOmniBeam}); break;
    case RxMode::Digital: pairs.push_back({tx, kAllBeams}); break;
    case RxMode::Analog:
    case RxMode::Hybrid:
      for (int r = 0; r < rx_elements; ++r) pairs.push_back({tx, r});
      break;
  }
}

}  // namespace

ScanSchedule scan_schedule(const DesignOption& option, Phase phase, const ArrayGeometry& bs_array,
                           const ArrayGeometry& ue_array) {
  bs_array.validate();
  ue_array.validate();
  ScanSchedule s;
  s.phase = phase;
  if (phase == Phase::Sync) {
    s.tx_elements = bs_array.size();
    s.rx_elements = ue_array.size();
    s.tx_directional = option.sync_tx == TxMode::Directional;
    s.rx_directional = option.sync_rx != RxMode::Omni;
    s.rx_chains = option.sync_rx == RxMode::Hybrid ? std::max(1, option.ue_chains) : 1;
    if (s.tx_directional) {
      for (int t = 0; t < s.tx_elements; ++t) append_rx(s.pairs, t, option.sync_rx, s.rx_elements);
    } else {
      append_rx(s.pairs, kOmniBeam, option.sync_rx, s.rx_elements);
    }
  } else {
    // The UE transmits the preamble along the direction learned during Sync.
    s.tx_elements = ue_array.size();
    s.rx_elements = bs_array.size();
    s.tx_directional = true;
    s.rx_directional = option.ra_rx != RxMode::Omni;
    s.rx_chains = option.ra_rx == RxMode::Hybrid ? std::max(1, option.bs_chains) : 1;
    append_rx(s.pairs, kFixedBeam, option.ra_rx, s.rx_elements);
  }
  return s;
}

}  // namespace mmia
