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

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semauction/auction.hpp"
#include "semauction/experiments.hpp"

namespace semauction::io {

// File-system or parse failure; mapped to its own status at the C boundary.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes via a temp file in the same directory plus a rename, so an
// interrupted run never leaves a truncated file behind. Creates missing
// parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// --- bid datasets -----------------------------------------------------------
// CSV with a bid_0..bid_{N-1} header; values carry 17 significant digits so a
// round trip is lossless.
std::string dataset_to_csv(const auction::BidMatrix& bids);
auction::BidMatrix dataset_from_csv(const std::string& text);
void save_dataset_csv(const std::filesystem::path& path, const auction::BidMatrix& bids);
auction::BidMatrix load_dataset_csv(const std::filesystem::path& path);

// --- trained auction parameters ---------------------------------------------
// Versioned plain text: one header line with the shape, then one
// "<log_w> <beta>" line per (bidder, group, line), 17 significant digits.
std::string params_to_text(const auction::AuctionNetParams& params);
auction::AuctionNetParams params_from_text(const std::string& text);
void save_params(const std::filesystem::path& path, const auction::AuctionNetParams& params);
auction::AuctionNetParams load_params(const std::filesystem::path& path);

// --- experiment tables ------------------------------------------------------
std::string history_to_csv(std::span<const double> dl_revenue, double spa_revenue);
std::string revenue_experiment_to_csv(const experiments::RevenueExperimentResult& result);
std::string sweep_to_csv(std::span<const experiments::MetricsRow> low_rows,
                         std::span<const experiments::MetricsRow> high_rows);

// --- charts ------------------------------------------------------------------
struct ChartSeries {
  std::string label;
  std::string color;  // SVG color name or hex
  bool dashed = false;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal standalone SVG line chart with axes, ticks and a legend.
std::string render_line_chart_svg(std::string_view title, std::string_view x_label,
                                  std::string_view y_label, std::span<const ChartSeries> series);

std::string sweep_chart_svg(std::string_view parameter_name,
                            std::span<const experiments::MetricsRow> low_rows,
                            std::span<const experiments::MetricsRow> high_rows);

}  // namespace semauction::io
