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
//
// Command-line front end. Everything goes through the shared library's C API
// (semauction.h); this file only parses flags, wires file paths and maps
// sem_status onto exit codes:
//   0 success, 1 validation error, 2 runtime/numerical failure,
//   3 acceptance-check failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semauction.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailed = 3;

int exit_code_for(sem_status status) {
  switch (status) {
    case SEM_OK: return kExitOk;
    case SEM_ERR_INVALID_ARGUMENT: return kExitValidation;
    case SEM_ERR_IO: return kExitRuntime;
    case SEM_ERR_NUMERIC: return kExitRuntime;
    case SEM_ERR_CHECK_FAILED: return kExitCheckFailed;
  }
  return kExitRuntime;
}

// Fails the whole run on the first bad status, with the library's message.
struct Fail {
  int code;
};

void check(sem_status status) {
  if (status != SEM_OK) {
    std::fprintf(stderr, "error: %s\n", sem_last_error());
    throw Fail{exit_code_for(status)};
  }
}

using ConfigPtr = std::unique_ptr<sem_config, decltype(&sem_config_destroy)>;
using DatasetPtr = std::unique_ptr<sem_dataset, decltype(&sem_dataset_destroy)>;
using AuctionPtr = std::unique_ptr<sem_auction, decltype(&sem_auction_destroy)>;

std::string get_value(const sem_config* config, const std::string& key) {
  char buffer[512];
  check(sem_config_get(config, key.c_str(), buffer, sizeof(buffer)));
  return buffer;
}

std::string out_path(const sem_config* config, const std::string& filename) {
  return get_value(config, "out_dir") + "/" + filename;
}

DatasetPtr generate(const sem_config* config) {
  sem_dataset* raw = nullptr;
  check(sem_dataset_generate(config, &raw));
  return DatasetPtr(raw, &sem_dataset_destroy);
}

// Fresh data the training never saw: same scenario, seed + 1.
DatasetPtr generate_held_out(sem_config* config) {
  const std::uint64_t seed = std::strtoull(get_value(config, "seed").c_str(), nullptr, 10);
  check(sem_config_set(config, "seed", std::to_string(seed + 1).c_str()));
  DatasetPtr held_out = generate(config);
  check(sem_config_set(config, "seed", std::to_string(seed).c_str()));
  return held_out;
}

AuctionPtr train_once(const sem_config* config, const sem_dataset* dataset) {
  sem_auction* raw = nullptr;
  check(sem_train(config, dataset, &raw));
  return AuctionPtr(raw, &sem_auction_destroy);
}

void write_history_csv(const sem_auction* auction, const sem_dataset* dataset,
                       const std::string& path) {
  double spa = 0.0;
  check(sem_dataset_spa_revenue(dataset, &spa));
  size_t length = 0;
  const double* history = sem_auction_history(auction, &length);
  std::string csv = "iteration,dl_revenue,spa_revenue\n";
  char line[96];
  for (size_t i = 0; i < length; ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.10g,%.10g\n", i + 1, history[i], spa);
    csv += line;
  }
  // Atomic like the library writers: temp file then rename.
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (f == nullptr) {
    std::fprintf(stderr, "error: cannot open %s\n", tmp.c_str());
    throw Fail{kExitRuntime};
  }
  std::fwrite(csv.data(), 1, csv.size(), f);
  std::fclose(f);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::fprintf(stderr, "error: cannot move %s into place\n", tmp.c_str());
    throw Fail{kExitRuntime};
  }
}

int run_generate(sem_config* config) {
  DatasetPtr dataset = generate(config);
  const std::string path = out_path(config, "bids.csv");
  check(sem_dataset_save_csv(dataset.get(), path.c_str()));
  std::printf("wrote %s (%d samples x %d devices)\n", path.c_str(), sem_dataset_rows(dataset.get()),
              sem_dataset_cols(dataset.get()));
  return kExitOk;
}

void apply_preset(sem_config* config, const std::string& preset) {
  if (preset == "low") {
    check(sem_config_set(config, "j_lo", "0.1"));
    check(sem_config_set(config, "j_hi", "0.4"));
  } else if (preset == "high") {
    check(sem_config_set(config, "j_lo", "0.6"));
    check(sem_config_set(config, "j_hi", "0.9"));
  }
}

int run_train(sem_config* config, const std::string& preset) {
  if (preset == "both") {
    const std::string csv = out_path(config, "revenue_experiment.csv");
    const std::string low = out_path(config, "params_low_j.txt");
    const std::string high = out_path(config, "params_high_j.txt");
    check(sem_revenue_experiment(config, csv.c_str(), low.c_str(), high.c_str()));
    std::printf("wrote %s\nwrote %s\nwrote %s\n", csv.c_str(), low.c_str(), high.c_str());
    return kExitOk;
  }
  apply_preset(config, preset);
  DatasetPtr dataset = generate(config);
  AuctionPtr auction = train_once(config, dataset.get());
  const std::string params_path = out_path(config, "params.txt");
  const std::string history_path = out_path(config, "history.csv");
  check(sem_auction_save(auction.get(), params_path.c_str()));
  write_history_csv(auction.get(), dataset.get(), history_path);
  std::printf("wrote %s\nwrote %s\n", params_path.c_str(), history_path.c_str());
  return kExitOk;
}

int run_eval(sem_config* config, const std::string& params_path, const std::string& data_path) {
  sem_auction* raw_auction = nullptr;
  check(sem_auction_load(params_path.c_str(), &raw_auction));
  AuctionPtr auction(raw_auction, &sem_auction_destroy);

  DatasetPtr dataset(nullptr, &sem_dataset_destroy);
  if (data_path.empty()) {
    dataset = generate_held_out(config);
    std::printf("evaluating on a held-out dataset (seed+1)\n");
  } else {
    sem_dataset* raw = nullptr;
    check(sem_dataset_load_csv(data_path.c_str(), &raw));
    dataset.reset(raw);
  }

  sem_eval_report report{};
  check(sem_eval(auction.get(), dataset.get(), &report));
  std::printf("instances:      %lld\n", report.instances);
  std::printf("hard_revenue:   %.10g\n", report.hard_revenue);
  std::printf("spa_revenue:    %.10g\n", report.spa_revenue);
  std::printf("ir_violations:  %lld\n", report.ir_violations);
  std::printf("max_ic_regret:  %.3g\n", report.max_ic_regret);
  if (report.ir_violations != 0 || report.max_ic_regret > 1e-9) {
    std::fprintf(stderr, "error: auction properties violated on the evaluation set\n");
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run_sweep(sem_config* config, const std::string& parameter, const std::string& values_arg) {
  std::vector<double> values;
  if (!values_arg.empty()) {
    std::size_t start = 0;
    while (start <= values_arg.size()) {
      const std::size_t comma = values_arg.find(',', start);
      const std::string token =
          values_arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!token.empty()) {
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == nullptr || *end != '\0') {
          std::fprintf(stderr, "error: --values: cannot parse '%s'\n", token.c_str());
          return kExitValidation;
        }
        values.push_back(v);
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  const std::string csv = out_path(config, "sweep_" + parameter + ".csv");
  const std::string svg = out_path(config, "sweep_" + parameter + ".svg");
  check(sem_sweep(config, parameter.c_str(), values.empty() ? nullptr : values.data(), values.size(),
                  csv.c_str(), svg.c_str()));
  std::printf("wrote %s\nwrote %s\n", csv.c_str(), svg.c_str());
  return kExitOk;
}

int run_curves() {
  size_t length = 0;
  check(sem_curves_csv(nullptr, 0, &length));
  std::string text(length, '\0');
  check(sem_curves_csv(text.data(), text.size() + 1, &length));
  std::fputs(text.c_str(), stdout);
  return kExitOk;
}

int run_selfcheck() {
  char report[2048];
  const sem_status status = sem_selfcheck(report, sizeof(report));
  std::fputs(report, stdout);
  if (status != SEM_OK && status != SEM_ERR_CHECK_FAILED) check(status);
  return exit_code_for(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "semauction: energy-auction simulator for wirelessly powered semantic-communication IoT.\n"
      "Devices harvest energy from an access point, their achievable text-recovery scores set\n"
      "their energy valuations, and a trainable single-item auction allocates the next service\n"
      "slot against a second-price baseline."};
  app.fallthrough();

  std::string config_path;
  app.add_option("-c,--config", config_path, "plain-text key=value configuration file");

  // One flag per configuration key, generated from the library's key table so
  // --help documents every default. Flags override file values.
  std::vector<std::pair<std::string, std::string>> overrides;
  const int key_count = sem_config_key_count();
  std::vector<std::string> key_values(static_cast<std::size_t>(key_count));
  for (int i = 0; i < key_count; ++i) {
    const char* name = nullptr;
    const char* description = nullptr;
    const char* default_value = nullptr;
    sem_config_key_info(i, &name, &description, &default_value);
    app.add_option("--" + std::string(name), key_values[static_cast<std::size_t>(i)],
                   std::string(description) + " [default: " + default_value + "]");
  }

  CLI::App* cmd_generate =
      app.add_subcommand("generate", "draw a bid dataset and write <out_dir>/bids.csv "
                                     "(columns bid_0..bid_{n_devices-1})");
  std::string preset = "config";
  CLI::App* cmd_train = app.add_subcommand(
      "train",
      "train the auction; writes <out_dir>/params.txt and <out_dir>/history.csv (columns "
      "iteration,dl_revenue,spa_revenue). With --preset both, trains under j in [0.1,0.4] and "
      "[0.6,0.9] and writes <out_dir>/revenue_experiment.csv (columns "
      "iteration,dl_rev_low_j,dl_rev_high_j,spa_low_j,spa_high_j) plus params_{low,high}_j.txt");
  cmd_train->add_option("--preset", preset,
                        "preference preset: low (j in [0.1,0.4]), high (j in [0.6,0.9]), both, or "
                        "config to keep j_lo/j_hi as configured")
      ->check(CLI::IsMember({"low", "high", "both", "config"}));

  std::string params_path;
  std::string data_path;
  CLI::App* cmd_eval = app.add_subcommand(
      "eval",
      "evaluate trained parameters on held-out data: hard-auction revenue, SPA revenue, "
      "individual-rationality violations (must be 0) and the worst misreport regret");
  cmd_eval->add_option("--params", params_path, "parameter file written by train")->required();
  cmd_eval->add_option("--data", data_path,
                       "bid CSV to evaluate on (default: a fresh dataset drawn with seed+1)");

  std::string sweep_parameter;
  std::string sweep_values;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep",
      "bid statistics versus one physical parameter, both presets; writes "
      "<out_dir>/sweep_<parameter>.csv (columns sweep_value,j_lo,j_hi,avg_bid,avg_highest_bid) "
      "and an SVG chart");
  cmd_sweep->add_option("--parameter", sweep_parameter, "one of: tau, d_AU, L, N_s")->required();
  cmd_sweep->add_option("--values", sweep_values, "comma-separated sweep grid (default: built-in)");

  CLI::App* cmd_curves = app.add_subcommand(
      "curves", "print the built-in score tables as CSV (columns d, similarity, bleu1gram)");
  CLI::App* cmd_selfcheck = app.add_subcommand(
      "selfcheck", "run the built-in verification suite (gradient, inversion, SPA equivalence)");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  ConfigPtr config(sem_config_create(), &sem_config_destroy);
  if (!config) {
    std::fprintf(stderr, "error: out of memory\n");
    return kExitRuntime;
  }

  try {
    if (!config_path.empty()) check(sem_config_load_file(config.get(), config_path.c_str()));
    for (int i = 0; i < key_count; ++i) {
      if (key_values[static_cast<std::size_t>(i)].empty()) continue;
      const char* name = nullptr;
      sem_config_key_info(i, &name, nullptr, nullptr);
      check(sem_config_set(config.get(), name, key_values[static_cast<std::size_t>(i)].c_str()));
    }
    check(sem_config_validate(config.get()));

    if (cmd_generate->parsed()) return run_generate(config.get());
    if (cmd_train->parsed()) return run_train(config.get(), preset);
    if (cmd_eval->parsed()) return run_eval(config.get(), params_path, data_path);
    if (cmd_sweep->parsed()) return run_sweep(config.get(), sweep_parameter, sweep_values);
    if (cmd_curves->parsed()) return run_curves();
    if (cmd_selfcheck->parsed()) return run_selfcheck();
  } catch (const Fail& fail) {
    return fail.code;
  }
  return kExitValidation;
}
