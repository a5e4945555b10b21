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

#include "semauction/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "semauction/valuation.hpp"

namespace semauction::experiments {

using auction::BidMatrix;

void ScenarioConfig::validate() const {
  wpcn.validate();
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (n_devices < 2) fail("n_devices: must be >= 2, got " + std::to_string(n_devices));
  if (n_samples < 1) fail("n_samples: must be >= 1, got " + std::to_string(n_samples));
  if (!(j_lo >= 0.0 && j_hi <= 1.0 && j_lo <= j_hi))
    fail("j_lo/j_hi: need 0 <= j_lo <= j_hi <= 1, got [" + std::to_string(j_lo) + ", " +
         std::to_string(j_hi) + "]");
  if (ns_lo < 1 || ns_lo > ns_hi)
    fail("Ns_lo/Ns_hi: need 1 <= Ns_lo <= Ns_hi, got [" + std::to_string(ns_lo) + ", " +
         std::to_string(ns_hi) + "]");
  if (len_lo < 1 || len_lo > len_hi)
    fail("L_lo/L_hi: need 1 <= L_lo <= L_hi, got [" + std::to_string(len_lo) + ", " +
         std::to_string(len_hi) + "]");
  if (bits_per_feature < 1) fail("b_f: must be >= 1, got " + std::to_string(bits_per_feature));
  if (!(dist_lo > 0.0) || !(dist_lo <= dist_hi))
    fail("d_lo/d_hi: need 0 < d_lo <= d_hi, got [" + std::to_string(dist_lo) + ", " +
         std::to_string(dist_hi) + "]");
}

BidMatrix generate_dataset(const ScenarioConfig& config) {
  config.validate();
  RandomStream rng(config.seed);
  const valuation::ScoreCurve& sim_curve = valuation::builtin_similarity_curve();
  const valuation::ScoreCurve& bleu_curve = valuation::builtin_bleu_curve();

  BidMatrix bids(config.n_samples, config.n_devices);
  for (int row = 0; row < config.n_samples; ++row) {
    for (int dev = 0; dev < config.n_devices; ++dev) {
      const double distance = rng.uniform(config.dist_lo, config.dist_hi);
      valuation::DeviceProfile profile;
      profile.sentence_count = rng.uniform_int(config.ns_lo, config.ns_hi);
      profile.sentence_length = rng.uniform_int(config.len_lo, config.len_hi);
      profile.bits_per_feature = config.bits_per_feature;
      profile.similarity_weight = rng.uniform(config.j_lo, config.j_hi);

      const wpcn::ChannelRealization ch = wpcn::sample_channel(rng, config.wpcn, distance);
      const double bits = wpcn::bits_budget(config.wpcn, ch);
      const double dim = valuation::feature_dim(bits, profile);

      double sim = valuation::lookup_score(sim_curve, dim);
      double bleu = valuation::lookup_score(bleu_curve, dim);
      if (config.apply_jitter) {
        sim = valuation::jitter_score(rng, sim, sim_curve.jitter_halfwidth());
        bleu = valuation::jitter_score(rng, bleu, bleu_curve.jitter_halfwidth());
      }
      bids.at(row, dev) = valuation::make_valuation(profile, sim, bleu).value;
    }
  }
  return bids;
}

double spa_revenue(const BidMatrix& bids) {
  if (bids.rows < 1 || bids.cols < 2)
    throw std::invalid_argument("spa_revenue: need at least one row of two bidders");
  double total = 0.0;
  for (int r = 0; r < bids.rows; ++r) total += auction::spa_baseline(bids.row(r)).payment;
  return total / static_cast<double>(bids.rows);
}

RevenueExperimentResult revenue_experiment(const ScenarioConfig& scenario,
                                           const auction::AuctionConfig& auction_config) {
  ScenarioConfig low = scenario;
  low.j_lo = kLowJPreset[0];
  low.j_hi = kLowJPreset[1];
  ScenarioConfig high = scenario;
  high.j_lo = kHighJPreset[0];
  high.j_hi = kHighJPreset[1];

  const BidMatrix data_low = generate_dataset(low);
  const BidMatrix data_high = generate_dataset(high);

  auction::TrainResult trained_low = auction::train(auction_config, data_low);
  auction::TrainResult trained_high = auction::train(auction_config, data_high);

  RevenueExperimentResult result;
  result.dl_revenue_low_j = std::move(trained_low.revenue_history);
  result.dl_revenue_high_j = std::move(trained_high.revenue_history);
  result.spa_revenue_low_j = spa_revenue(data_low);
  result.spa_revenue_high_j = spa_revenue(data_high);
  result.params_low_j = std::move(trained_low.params);
  result.params_high_j = std::move(trained_high.params);
  return result;
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "tau") return SweepParameter::kHarvestTime;
  if (name == "d_AU") return SweepParameter::kDistance;
  if (name == "L") return SweepParameter::kSentenceLength;
  if (name == "N_s") return SweepParameter::kSentenceCount;
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                              "' (expected tau, d_AU, L or N_s)");
}

std::string_view sweep_parameter_name(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::kHarvestTime: return "tau";
    case SweepParameter::kDistance: return "d_AU";
    case SweepParameter::kSentenceLength: return "L";
    case SweepParameter::kSentenceCount: return "N_s";
  }
  throw std::invalid_argument("unknown sweep parameter");
}

namespace {

int require_integer_value(SweepParameter parameter, double value) {
  if (!(value >= 1.0) || value != std::floor(value))
    throw std::invalid_argument(std::string(sweep_parameter_name(parameter)) +
                                " sweep: values must be integers >= 1, got " + std::to_string(value));
  return static_cast<int>(value);
}

ScenarioConfig pin_sweep_value(const ScenarioConfig& base, SweepParameter parameter, double value) {
  ScenarioConfig config = base;
  switch (parameter) {
    case SweepParameter::kHarvestTime:
      if (!(value > 0.0))
        throw std::invalid_argument("tau sweep: values must be > 0, got " + std::to_string(value));
      config.wpcn.harvest_time_s = value;
      break;
    case SweepParameter::kDistance:
      if (!(value > 0.0))
        throw std::invalid_argument("d_AU sweep: values must be > 0, got " + std::to_string(value));
      config.dist_lo = config.dist_hi = value;
      break;
    case SweepParameter::kSentenceLength:
      config.len_lo = config.len_hi = require_integer_value(parameter, value);
      break;
    case SweepParameter::kSentenceCount:
      config.ns_lo = config.ns_hi = require_integer_value(parameter, value);
      break;
  }
  return config;
}

}  // namespace

std::vector<MetricsRow> sweep(const ScenarioConfig& base, SweepParameter parameter,
                              std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("sweep: no values given");
  std::vector<MetricsRow> rows;
  rows.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    ScenarioConfig config = pin_sweep_value(base, parameter, values[k]);
    config.seed = base.seed + k;
    const BidMatrix bids = generate_dataset(config);

    double sum = 0.0;
    double sum_max = 0.0;
    for (int r = 0; r < bids.rows; ++r) {
      double row_max = bids.at(r, 0);
      for (int c = 0; c < bids.cols; ++c) {
        sum += bids.at(r, c);
        row_max = std::max(row_max, bids.at(r, c));
      }
      sum_max += row_max;
    }
    MetricsRow row;
    row.sweep_value = values[k];
    row.avg_bid = sum / (static_cast<double>(bids.rows) * bids.cols);
    row.avg_highest_bid = sum_max / static_cast<double>(bids.rows);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> default_sweep_values(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::kHarvestTime: return {0.8, 0.9, 1.0, 1.1, 1.2};
    case SweepParameter::kDistance: return {8.0, 9.0, 10.0, 11.0, 12.0};
    case SweepParameter::kSentenceLength: return {20.0, 22.0, 24.0, 26.0, 28.0, 30.0, 32.0};
    case SweepParameter::kSentenceCount: return {15.0, 18.0, 21.0, 24.0, 27.0, 30.0};
  }
  throw std::invalid_argument("unknown sweep parameter");
}

double calibrate_budget_gain(const wpcn::WpcnParams& base, const BudgetGainCalibration& calibration) {
  if (calibration.n_draws < 1) throw std::invalid_argument("calibration: n_draws must be >= 1");
  if (!(calibration.distance_m > 0.0)) throw std::invalid_argument("calibration: distance must be > 0");

  wpcn::WpcnParams params = base;
  params.budget_gain = 1.0;
  params.validate();

  // Freeze the random draws once; each candidate gain is then evaluated on
  // the same sample, which makes the median monotone in the gain and the
  // bisection exact.
  RandomStream rng(calibration.seed);
  struct Draw {
    double gain_product;  // ||h||^2 * ||g||^2
    double uplink_gain;   // ||g||^2
    double divisor;       // N_s * L * b_f
  };
  std::vector<Draw> draws(static_cast<std::size_t>(calibration.n_draws));
  for (auto& d : draws) {
    const int ns = rng.uniform_int(calibration.ns_lo, calibration.ns_hi);
    const int len = rng.uniform_int(calibration.len_lo, calibration.len_hi);
    const wpcn::ChannelRealization ch = wpcn::sample_channel(rng, params, calibration.distance_m);
    d.gain_product = ch.downlink_gain * ch.uplink_gain;
    d.uplink_gain = ch.uplink_gain;
    d.divisor = static_cast<double>(ns) * len * calibration.bits_per_feature;
  }

  const double tau_rho = params.harvest_time_s * params.rho();
  const double xi = params.xi();
  const double rate_over_phi = params.rate_bits / params.snr_threshold();
  std::vector<double> dims(draws.size());

  auto median_dim = [&](double gain) {
    for (std::size_t i = 0; i < draws.size(); ++i) {
      const double numerator = tau_rho * gain * draws[i].gain_product - xi * draws[i].uplink_gain;
      dims[i] = rate_over_phi * std::max(0.0, numerator) / draws[i].divisor;
    }
    const std::size_t mid = dims.size() / 2;
    std::nth_element(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(mid), dims.end());
    return dims[mid];
  };

  double lo = 1.0;
  double hi = 1.0;
  while (median_dim(hi) < calibration.target_median_dim) {
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("calibration: gain bracket exceeded 1e12");
  }
  for (int step = 0; step < 200 && hi - lo > 1e-9 * hi; ++step) {
    const double mid = 0.5 * (lo + hi);
    (median_dim(mid) < calibration.target_median_dim ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace semauction::experiments
