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

#include "semauction/wpcn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace semauction::wpcn {

double to_watts(double level_dbm) { return std::pow(10.0, (level_dbm - 30.0) / 10.0); }

double WpcnParams::tx_power_w() const { return to_watts(tx_power_dbm); }

double WpcnParams::noise_power_w() const { return to_watts(noise_power_dbm); }

double WpcnParams::snr_threshold() const { return std::exp2(rate_bits) - 1.0; }

double WpcnParams::rho() const { return conversion_efficiency * tx_power_w() / noise_power_w(); }

double WpcnParams::xi() const { return circuit_energy_ws / noise_power_w(); }

void WpcnParams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (antenna_count < 1) fail("K: must be >= 1, got " + std::to_string(antenna_count));
  if (!(conversion_efficiency >= 0.0 && conversion_efficiency <= 1.0))
    fail("eta: must be in [0, 1], got " + std::to_string(conversion_efficiency));
  if (!(harvest_time_s > 0.0)) fail("tau: must be > 0, got " + std::to_string(harvest_time_s));
  if (!(circuit_energy_ws >= 0.0)) fail("E_cir: must be >= 0, got " + std::to_string(circuit_energy_ws));
  if (!(rate_bits > 0.0)) fail("R: must be > 0, got " + std::to_string(rate_bits));
  if (!(pathloss_exponent > 0.0)) fail("alpha: must be > 0, got " + std::to_string(pathloss_exponent));
  if (!(ref_loss > 0.0)) fail("ref_loss: must be > 0, got " + std::to_string(ref_loss));
  if (!(budget_gain >= 1.0)) fail("budget_gain: must be >= 1, got " + std::to_string(budget_gain));
  if (!std::isfinite(tx_power_dbm)) fail("P_dbm: must be finite");
  if (!std::isfinite(noise_power_dbm)) fail("sigma2_dbm: must be finite");
}

ChannelRealization sample_channel(RandomStream& rng, const WpcnParams& params, double distance_m) {
  if (!(distance_m > 0.0))
    throw std::invalid_argument("sample_channel: distance must be > 0, got " + std::to_string(distance_m));

  const double variance = params.ref_loss * std::pow(distance_m, -params.pathloss_exponent);
  const double component_sigma = std::sqrt(variance / 2.0);  // per real/imag part

  ChannelRealization ch;
  ch.distance_m = distance_m;
  ch.downlink.resize(static_cast<std::size_t>(params.antenna_count));
  ch.uplink.resize(static_cast<std::size_t>(params.antenna_count));

  auto draw = [&](std::vector<std::complex<double>>& v) {
    double norm2 = 0.0;
    for (auto& entry : v) {
      const double re = component_sigma * rng.gaussian();
      const double im = component_sigma * rng.gaussian();
      entry = {re, im};
      norm2 += re * re + im * im;
    }
    return norm2;
  };
  ch.downlink_gain = draw(ch.downlink);
  ch.uplink_gain = draw(ch.uplink);
  return ch;
}

double harvested_energy(const WpcnParams& params, const ChannelRealization& ch) {
  return params.conversion_efficiency * params.harvest_time_s * params.tx_power_w() * ch.downlink_gain;
}

namespace {

// Shared numerator of the SNR/time/bit formulas:
// tau * rho * G * ||h||^2 * ||g||^2 - xi * ||g||^2.
double link_budget_numerator(const WpcnParams& params, const ChannelRealization& ch) {
  return params.harvest_time_s * params.rho() * params.budget_gain * ch.downlink_gain * ch.uplink_gain -
         params.xi() * ch.uplink_gain;
}

}  // namespace

double snr(const WpcnParams& params, const ChannelRealization& ch, double tx_time_s) {
  if (!(tx_time_s > 0.0))
    throw std::invalid_argument("snr: transmit time must be > 0, got " + std::to_string(tx_time_s));
  return link_budget_numerator(params, ch) / tx_time_s;
}

double transmission_time(const WpcnParams& params, const ChannelRealization& ch) {
  return std::max(0.0, link_budget_numerator(params, ch) / params.snr_threshold());
}

double bits_budget(const WpcnParams& params, const ChannelRealization& ch) {
  return params.rate_bits * transmission_time(params, ch);
}

}  // namespace semauction::wpcn
