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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "semauction/auction.hpp"
#include "semauction/wpcn.hpp"

namespace semauction::experiments {

// End-to-end scenario: channel draw -> bit budget -> score lookup -> jitter
// -> valuation, for n_devices per auction instance.
struct ScenarioConfig {
  wpcn::WpcnParams wpcn;
  int n_devices = 10;
  int n_samples = 1000;
  double j_lo = 0.1, j_hi = 0.4;   // similarity preference range
  int ns_lo = 15, ns_hi = 30;      // sentence count range (inclusive)
  int len_lo = 20, len_hi = 32;    // sentence length range (inclusive)
  int bits_per_feature = 32;
  double dist_lo = 8.0, dist_hi = 10.0;  // device-AP distance range, meters
  bool apply_jitter = true;
  std::uint64_t seed = 1;

  void validate() const;
};

// The two preference presets every experiment sweeps over.
inline constexpr double kLowJPreset[2] = {0.1, 0.4};
inline constexpr double kHighJPreset[2] = {0.6, 0.9};

// Draws the full bid dataset (truthful bids = valuations). Deterministic for
// a fixed config; one sample row per auction instance.
auction::BidMatrix generate_dataset(const ScenarioConfig& config);

// Mean second-highest bid over all rows: the static SPA revenue of a dataset.
double spa_revenue(const auction::BidMatrix& bids);

struct RevenueExperimentResult {
  std::vector<double> dl_revenue_low_j;   // per-iteration training revenue
  std::vector<double> dl_revenue_high_j;
  double spa_revenue_low_j = 0.0;         // static baselines on the same data
  double spa_revenue_high_j = 0.0;
  auction::AuctionNetParams params_low_j;
  auction::AuctionNetParams params_high_j;
};

// Trains the auction under both preference presets on datasets drawn with the
// same seed and reports the revenue trajectories next to the SPA baselines.
RevenueExperimentResult revenue_experiment(const ScenarioConfig& scenario,
                                           const auction::AuctionConfig& auction_config);

enum class SweepParameter {
  kHarvestTime,     // tau
  kDistance,        // d_AU
  kSentenceLength,  // L
  kSentenceCount,   // N_s
};

// Accepts "tau", "d_AU", "L" or "N_s".
SweepParameter parse_sweep_parameter(std::string_view name);
std::string_view sweep_parameter_name(SweepParameter parameter);

struct MetricsRow {
  double sweep_value = 0.0;
  double avg_bid = 0.0;          // mean over all devices and samples
  double avg_highest_bid = 0.0;  // mean over samples of the per-sample max
};

// Regenerates the dataset at each swept value (the matching random range
// collapses to the fixed value) and reports the bid statistics. Sweep point k
// draws with seed base_seed + k, so points are independent and a parallel
// run would agree with a serial one.
std::vector<MetricsRow> sweep(const ScenarioConfig& base, SweepParameter parameter,
                              std::span<const double> values);

// Default sweep grids, matching the ranges the bid statistics are reported
// over.
std::vector<double> default_sweep_values(SweepParameter parameter);

// Bisection on the feasibility gain until the median feature dimension at
// distance_m (with the scenario's workload distributions) hits
// target_median_dim. Used once to pin wpcn::kDefaultBudgetGain.
struct BudgetGainCalibration {
  double target_median_dim = 8.0;
  double distance_m = 10.0;
  int n_draws = 200000;
  int ns_lo = 15, ns_hi = 30;
  int len_lo = 20, len_hi = 32;
  int bits_per_feature = 32;
  std::uint64_t seed = 20260810;
};

double calibrate_budget_gain(const wpcn::WpcnParams& base,
                             const BudgetGainCalibration& calibration = {});

}  // namespace semauction::experiments
