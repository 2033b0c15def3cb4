// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#pragma once

namespace mmia {

/// A signalling configuration: T_sig seconds every T_per seconds.
struct OverheadPoint {
  double t_sig = 10e-6;
  double t_per = 200e-6;

  double phi() const { return t_sig / t_per; }
  static OverheadPoint from_phi(double t_sig, double phi);
};

/// Time for K scan cycles of L slots: K * L * T_sig / phi.
double detection_delay(int cycles, int slots, double t_sig, double phi);

enum class RaOverheadMode {
  Analog,             ///< T_sig / T_per
  DigitalMultiplexed  ///< RA occupies N_div * W_sig of the band; the rest carries data
};

/// RA overhead fraction. `printed_formula` drops the N_div factor in the
/// multiplexed mode (W_sig * T_sig / (W_tot * T_per)).
double ra_overhead(RaOverheadMode mode, double t_sig, double t_per, double w_sig, int n_div, double w_tot,
                   bool printed_formula = false);

struct DelayBoundParams {
  double g_rx = 16.0;
  double g_tx = 64.0;
  double g_tx_sync = 1.0;  ///< 1 for omni sync transmission, g_tx for directional
  double gamma_sig = 100.0;  ///< accumulated SNR needed for reliable detection (linear)
  double gamma_tgt = 1e-3;   ///< target beamformed SNR over the full bandwidth (linear)
  double w_tot = 1e9;
  double t_sig_min = 10e-6;
  double phi = 0.05;

  void validate() const;
};

enum class ReceiverArch { Analog, Digital };

/// Lower bound on the synchronization delay:
///   analog:  (G_rx / phi) * max(gamma_sig * G_tx / (gamma_tgt * W_tot), G_tx_sync * T_min)
///   digital: the same without the leading G_rx.
double sync_delay_bound(const DelayBoundParams& params, ReceiverArch arch);

}  // namespace mmia
