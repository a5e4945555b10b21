#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2025-2026 the semauction authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <complex>
#include <vector>

#include "semauction/rng.hpp"

namespace semauction::wpcn {

// Default feasibility gain. With the literal default constants below, the
// mean harvested energy (~0.31 mW.s) sits under the circuit draw (0.5 mW.s),
// so nearly every device would be unable to transmit. budget_gain scales the
// channel-gain product until the link budget reaches a useful operating
// point. The default was produced by bisecting the gain until the median
// feature dimension at a 10 m device distance equals 8, using 200000 draws of
// (channel, sentence count, sentence length) with seed 20260810; see
// calibrate_budget_gain() in experiments.hpp. Set budget_gain=1 to disable.
inline constexpr double kDefaultBudgetGain = 96.232634281041101;

// Physical-layer constants for the harvest-then-transmit link.
struct WpcnParams {
  int antenna_count = 10;            // K, H-AP antennas
  double conversion_efficiency = 0.8;  // eta in [0,1]
  double harvest_time_s = 1.0;       // tau
  double tx_power_dbm = 35.0;        // H-AP transmit power
  double noise_power_dbm = -80.0;    // receiver noise power
  double circuit_energy_ws = 5e-4;   // fixed circuit energy drain per round
  double rate_bits = 2.0;            // fixed uplink data rate R (bits/s/Hz)
  double pathloss_exponent = 2.0;
  double ref_loss = 1e-3;            // linear attenuation at the 1 m reference
  double budget_gain = kDefaultBudgetGain;

  double tx_power_w() const;
  double noise_power_w() const;
  double snr_threshold() const;      // phi = 2^R - 1
  double rho() const;                // eta * P / sigma^2
  double xi() const;                 // E_cir / sigma^2

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// One fading draw for a single device: downlink vector h, uplink vector g,
// each entry i.i.d. circularly symmetric complex Gaussian with total variance
// ref_loss * distance^(-alpha). Squared norms are cached at construction.
struct ChannelRealization {
  std::vector<std::complex<double>> downlink;  // h
  std::vector<std::complex<double>> uplink;    // g
  double distance_m = 0.0;
  double downlink_gain = 0.0;  // ||h||^2
  double uplink_gain = 0.0;    // ||g||^2
};

// dBm -> watts.
double to_watts(double level_dbm);

// Draws a fresh channel realization; rejects distance_m <= 0.
ChannelRealization sample_channel(RandomStream& rng, const WpcnParams& params, double distance_m);

// Energy captured over the harvest phase: eta * tau * P * ||h||^2. Reported
// raw, without the feasibility gain.
double harvested_energy(const WpcnParams& params, const ChannelRealization& ch);

// Uplink SNR when the harvested energy is spent over tx_time_s. May be
// negative when the harvest does not cover the circuit drain; returned as-is.
// Rejects tx_time_s <= 0.
double snr(const WpcnParams& params, const ChannelRealization& ch, double tx_time_s);

// Transmit duration that lands the SNR exactly on the fixed-rate threshold,
// clamped to 0 for devices whose harvest cannot cover the circuit drain.
double transmission_time(const WpcnParams& params, const ChannelRealization& ch);

// Uplink bit budget: rate_bits * transmission_time.
double bits_budget(const WpcnParams& params, const ChannelRealization& ch);

}  // namespace semauction::wpcn
