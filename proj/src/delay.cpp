// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/delay.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmia {

OverheadPoint OverheadPoint::from_phi(double t_sig, double phi) {
  if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("overhead must be in (0, 1]");
  return {t_sig, t_sig / phi};
}

double detection_delay(int cycles, int slots, double t_sig, double phi) {
  if (cycles < 1 || slots < 1) throw std::invalid_argument("detection_delay needs K >= 1 and L >= 1");
  if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("overhead must be in (0, 1]");
  if (!(t_sig > 0.0)) throw std::invalid_argument("signal duration must be positive");
  return static_cast<double>(cycles) * slots * t_sig / phi;
}

double ra_overhead(RaOverheadMode mode, double t_sig, double t_per, double w_sig, int n_div, double w_tot,
                   bool printed_formula) {
  if (!(t_sig > 0.0) || !(t_per > 0.0) || !(w_sig > 0.0) || !(w_tot > 0.0) || n_div < 1)
    throw std::invalid_argument("ra_overhead needs positive inputs");
  if (mode == RaOverheadMode::Analog) return t_sig / t_per;
  const double occupied = printed_formula ? w_sig : n_div * w_sig;
  return occupied * t_sig / (w_tot * t_per);
}

void DelayBoundParams::validate() const {
  if (!(g_rx > 0.0 && g_tx > 0.0 && g_tx_sync > 0.0 && gamma_sig >= 0.0 && gamma_tgt > 0.0 && w_tot > 0.0 &&
        t_sig_min >= 0.0))
    throw std::invalid_argument("delay bound parameters must be positive");
  if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("overhead must be in (0, 1]");
}

double sync_delay_bound(const DelayBoundParams& p, ReceiverArch arch) {
  p.validate();
  const double snr_term = p.gamma_sig * p.g_tx / (p.gamma_tgt * p.w_tot);
  const double duration_term = p.g_tx_sync * p.t_sig_min;
  const double scan = arch == ReceiverArch::Analog ? p.g_rx : 1.0;
  return scan / p.phi * std::max(snr_term, duration_term);
}

}  // namespace mmia
