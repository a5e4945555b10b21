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

#include "semauction.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "semauction/auction.hpp"
#include "semauction/checks.hpp"
#include "semauction/config.hpp"
#include "semauction/experiments.hpp"
#include "semauction/io.hpp"
#include "semauction/valuation.hpp"

using semauction::auction::AuctionNetParams;
using semauction::auction::BidMatrix;

// Opaque handle definitions. The config keeps the builder so validation
// errors can point at the file line or flag that set the bad value.
struct sem_config {
  semauction::config::ConfigBuilder builder;
};

struct sem_dataset {
  BidMatrix bids;
};

struct sem_auction {
  AuctionNetParams params;
  std::vector<double> history;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Translates the C++ error taxonomy onto status codes: invalid input stays
// invalid input, file problems become SEM_ERR_IO, anything else is a numeric/
// runtime failure.
sem_status classify(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const semauction::io::IoError& e) {
    set_error(e.what());
    return SEM_ERR_IO;
  } catch (const semauction::config::ConfigError& e) {
    set_error(e.what());
    return SEM_ERR_INVALID_ARGUMENT;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SEM_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SEM_ERR_NUMERIC;
  } catch (...) {
    set_error("unknown failure");
    return SEM_ERR_NUMERIC;
  }
}

template <typename Fn>
sem_status guarded(Fn&& fn) {
  try {
    fn();
    return SEM_OK;
  } catch (...) {
    return classify(std::current_exception());
  }
}

sem_status require(bool condition, const char* message) {
  if (condition) return SEM_OK;
  set_error(message);
  return SEM_ERR_INVALID_ARGUMENT;
}

sem_status fill_buffer(const std::string& text, char* buffer, size_t capacity, size_t* length) {
  if (length != nullptr) *length = text.size();
  if (buffer == nullptr) return SEM_OK;
  if (capacity == 0) {
    set_error("zero-capacity buffer");
    return SEM_ERR_INVALID_ARGUMENT;
  }
  const size_t n = std::min(capacity - 1, text.size());
  std::memcpy(buffer, text.data(), n);
  buffer[n] = '\0';
  if (n < text.size()) {
    set_error("buffer too small: need " + std::to_string(text.size() + 1) + " bytes");
    return SEM_ERR_INVALID_ARGUMENT;
  }
  return SEM_OK;
}

// Misreport grid of the incentive-compatibility audit.
constexpr int kMisreportPoints = 201;
constexpr double kMisreportMax = 1.2;

std::vector<double> misreport_grid() {
  std::vector<double> grid(kMisreportPoints);
  for (int i = 0; i < kMisreportPoints; ++i)
    grid[static_cast<std::size_t>(i)] = kMisreportMax * i / (kMisreportPoints - 1);
  return grid;
}

}  // namespace

extern "C" {

const char* sem_version(void) { return "0.1.0"; }

const char* sem_last_error(void) { return g_last_error.c_str(); }

sem_config* sem_config_create(void) { return new (std::nothrow) sem_config(); }

void sem_config_destroy(sem_config* config) { delete config; }

sem_status sem_config_load_file(sem_config* config, const char* path) {
  if (sem_status s = require(config != nullptr && path != nullptr, "null argument"); s != SEM_OK) return s;
  return guarded([&] { config->builder.load_file(path); });
}

sem_status sem_config_set(sem_config* config, const char* key, const char* value) {
  if (sem_status s = require(config != nullptr && key != nullptr && value != nullptr, "null argument");
      s != SEM_OK)
    return s;
  return guarded([&] { config->builder.set_override(key, value); });
}

sem_status sem_config_get(const sem_config* config, const char* key, char* buffer, size_t capacity) {
  if (sem_status s = require(config != nullptr && key != nullptr, "null argument"); s != SEM_OK) return s;
  sem_status status = SEM_OK;
  const sem_status run = guarded([&] {
    status = fill_buffer(semauction::config::get_key(config->builder.current(), key), buffer, capacity, nullptr);
  });
  return run != SEM_OK ? run : status;
}

sem_status sem_config_validate(const sem_config* config) {
  if (sem_status s = require(config != nullptr, "null config"); s != SEM_OK) return s;
  return guarded([&] { (void)config->builder.finalize(); });
}

int sem_config_key_count(void) {
  return static_cast<int>(semauction::config::config_keys().size());
}

sem_status sem_config_key_info(int index, const char** name, const char** description,
                               const char** default_value) {
  const auto& keys = semauction::config::config_keys();
  if (sem_status s = require(index >= 0 && index < static_cast<int>(keys.size()), "key index out of range");
      s != SEM_OK)
    return s;
  const auto& key = keys[static_cast<std::size_t>(index)];
  if (name != nullptr) *name = key.name.c_str();
  if (description != nullptr) *description = key.description.c_str();
  if (default_value != nullptr) *default_value = key.default_value.c_str();
  return SEM_OK;
}

sem_status sem_dataset_generate(const sem_config* config, sem_dataset** out) {
  if (sem_status s = require(config != nullptr && out != nullptr, "null argument"); s != SEM_OK) return s;
  return guarded([&] {
    const semauction::config::RunConfig run = config->builder.finalize();
    auto dataset = std::make_unique<sem_dataset>();
    dataset->bids = semauction::experiments::generate_dataset(run.scenario);
    *out = dataset.release();
  });
}

sem_status sem_dataset_load_csv(const char* path, sem_dataset** out) {
  if (sem_status s = require(path != nullptr && out != nullptr, "null argument"); s != SEM_OK) return s;
  return guarded([&] {
    auto dataset = std::make_unique<sem_dataset>();
    dataset->bids = semauction::io::load_dataset_csv(path);
    *out = dataset.release();
  });
}

sem_status sem_dataset_save_csv(const sem_dataset* dataset, const char* path) {
  if (sem_status s = require(dataset != nullptr && path != nullptr, "null argument"); s != SEM_OK) return s;
  return guarded([&] { semauction::io::save_dataset_csv(path, dataset->bids); });
}

int sem_dataset_rows(const sem_dataset* dataset) { return dataset == nullptr ? 0 : dataset->bids.rows; }

int sem_dataset_cols(const sem_dataset* dataset) { return dataset == nullptr ? 0 : dataset->bids.cols; }

const double* sem_dataset_data(const sem_dataset* dataset) {
  return dataset == nullptr ? nullptr : dataset->bids.data.data();
}

sem_status sem_dataset_spa_revenue(const sem_dataset* dataset, double* out) {
  if (sem_status s = require(dataset != nullptr && out != nullptr, "null argument"); s != SEM_OK) return s;
  return guarded([&] { *out = semauction::experiments::spa_revenue(dataset->bids); });
}

void sem_dataset_destroy(sem_dataset* dataset) { delete dataset; }

sem_status sem_train(const sem_config* config, const sem_dataset* dataset, sem_auction** out) {
  if (sem_status s = require(config != nullptr && dataset != nullptr && out != nullptr, "null argument");
      s != SEM_OK)
    return s;
  return guarded([&] {
    semauction::config::RunConfig run = config->builder.finalize();
    run.auction.n_bidders = dataset->bids.cols;  // follow the data we were given
    semauction::auction::TrainResult trained = semauction::auction::train(run.auction, dataset->bids);
    auto auction = std::make_unique<sem_auction>();
    auction->params = std::move(trained.params);
    auction->history = std::move(trained.revenue_history);
    *out = auction.release();
  });
}

sem_status sem_auction_save(const sem_auction* auction, const char* path) {
  if (sem_status s = require(auction != nullptr && path != nullptr, "null argument"); s != SEM_OK) return s;
  return guarded([&] { semauction::io::save_params(path, auction->params); });
}

sem_status sem_auction_load(const char* path, sem_auction** out) {
  if (sem_status s = require(path != nullptr && out != nullptr, "null argument"); s != SEM_OK) return s;
  return guarded([&] {
    auto auction = std::make_unique<sem_auction>();
    auction->params = semauction::io::load_params(path);
    *out = auction.release();
  });
}

const double* sem_auction_history(const sem_auction* auction, size_t* length) {
  if (auction == nullptr) {
    if (length != nullptr) *length = 0;
    return nullptr;
  }
  if (length != nullptr) *length = auction->history.size();
  return auction->history.data();
}

void sem_auction_destroy(sem_auction* auction) { delete auction; }

sem_status sem_eval(const sem_auction* auction, const sem_dataset* dataset, sem_eval_report* out) {
  if (sem_status s = require(auction != nullptr && dataset != nullptr && out != nullptr, "null argument");
      s != SEM_OK)
    return s;
  return guarded([&] {
    const BidMatrix& bids = dataset->bids;
    if (bids.cols != auction->params.n_bidders)
      throw std::invalid_argument("eval: dataset has " + std::to_string(bids.cols) +
                                  " bidders but the parameters expect " +
                                  std::to_string(auction->params.n_bidders));

    const std::vector<double> grid = misreport_grid();
    double revenue = 0.0;
    double spa = 0.0;
    double regret = 0.0;
    long long violations = 0;
    for (int r = 0; r < bids.rows; ++r) {
      const auto row = bids.row(r);
      const semauction::auction::HardOutcome hard =
          semauction::auction::run_hard_auction(auction->params, row);
      if (hard.winner < bids.cols) {
        revenue += hard.payment;
        if (hard.payment > row[static_cast<std::size_t>(hard.winner)]) ++violations;
      }
      spa += semauction::auction::spa_baseline(row).payment;
      for (int bidder = 0; bidder < bids.cols; ++bidder)
        regret = std::max(regret, semauction::auction::ic_regret(auction->params, row, bidder, grid));
    }
    out->hard_revenue = revenue / bids.rows;
    out->spa_revenue = spa / bids.rows;
    out->max_ic_regret = regret;
    out->ir_violations = violations;
    out->instances = bids.rows;
  });
}

sem_status sem_revenue_experiment(const sem_config* config, const char* csv_path,
                                  const char* params_low_path, const char* params_high_path) {
  if (sem_status s = require(config != nullptr && csv_path != nullptr, "null argument"); s != SEM_OK)
    return s;
  return guarded([&] {
    const semauction::config::RunConfig run = config->builder.finalize();
    const semauction::experiments::RevenueExperimentResult result =
        semauction::experiments::revenue_experiment(run.scenario, run.auction);
    semauction::io::write_file_atomic(csv_path, semauction::io::revenue_experiment_to_csv(result));
    if (params_low_path != nullptr) semauction::io::save_params(params_low_path, result.params_low_j);
    if (params_high_path != nullptr) semauction::io::save_params(params_high_path, result.params_high_j);
  });
}

sem_status sem_sweep(const sem_config* config, const char* parameter, const double* values,
                     size_t n_values, const char* csv_path, const char* svg_path) {
  if (sem_status s = require(config != nullptr && parameter != nullptr && csv_path != nullptr,
                             "null argument");
      s != SEM_OK)
    return s;
  if (sem_status s = require(values != nullptr || n_values == 0, "null values with nonzero count");
      s != SEM_OK)
    return s;
  return guarded([&] {
    const semauction::config::RunConfig run = config->builder.finalize();
    const semauction::experiments::SweepParameter swept =
        semauction::experiments::parse_sweep_parameter(parameter);
    std::vector<double> grid(values, values + n_values);
    if (grid.empty()) grid = semauction::experiments::default_sweep_values(swept);

    semauction::experiments::ScenarioConfig low = run.scenario;
    low.j_lo = semauction::experiments::kLowJPreset[0];
    low.j_hi = semauction::experiments::kLowJPreset[1];
    semauction::experiments::ScenarioConfig high = run.scenario;
    high.j_lo = semauction::experiments::kHighJPreset[0];
    high.j_hi = semauction::experiments::kHighJPreset[1];

    const auto low_rows = semauction::experiments::sweep(low, swept, grid);
    const auto high_rows = semauction::experiments::sweep(high, swept, grid);
    semauction::io::write_file_atomic(csv_path, semauction::io::sweep_to_csv(low_rows, high_rows));
    if (svg_path != nullptr)
      semauction::io::write_file_atomic(
          svg_path, semauction::io::sweep_chart_svg(parameter, low_rows, high_rows));
  });
}

sem_status sem_curves_csv(char* buffer, size_t capacity, size_t* length) {
  sem_status status = SEM_OK;
  const sem_status run = guarded([&] {
    const auto& sim = semauction::valuation::builtin_similarity_curve();
    const auto& bleu = semauction::valuation::builtin_bleu_curve();
    std::string text = "d, similarity, bleu1gram\n";
    for (int d = 1; d <= sim.max_dim(); ++d)
      text += std::to_string(d) + ", " + semauction::valuation::format_score(sim.at(d)) + ", " +
              semauction::valuation::format_score(bleu.at(d)) + "\n";
    status = fill_buffer(text, buffer, capacity, length);
  });
  return run != SEM_OK ? run : status;
}

sem_status sem_selfcheck(char* report_buffer, size_t capacity) {
  bool all_pass = false;
  sem_status fill = SEM_OK;
  const sem_status run = guarded([&] {
    const std::vector<semauction::checks::CheckResult> results = semauction::checks::run_all_checks();
    std::string report;
    all_pass = true;
    for (const auto& result : results) {
      report += std::string(result.pass ? "[PASS] " : "[FAIL] ") + result.name + ": " + result.detail + "\n";
      all_pass = all_pass && result.pass;
    }
    fill = fill_buffer(report, report_buffer, capacity, nullptr);
  });
  if (run != SEM_OK) return run;
  if (fill != SEM_OK) return fill;
  if (!all_pass) {
    set_error("selfcheck failed");
    return SEM_ERR_CHECK_FAILED;
  }
  return SEM_OK;
}

}  // extern "C"
