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

#include "semauction/config.hpp"

#include <charconv>
#include <cstdio>
#include <functional>
#include <sstream>

#include "semauction/io.hpp"

namespace semauction::config {

namespace {

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError(std::string(key) + ": cannot parse '" + std::string(value) + "' as a number");
  return out;
}

long long parse_integer(std::string_view key, std::string_view value) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError(std::string(key) + ": cannot parse '" + std::string(value) + "' as an integer");
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct KeySpec {
  const char* name;
  const char* description;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = {
      // physical layer
      {"K", "H-AP antenna count",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.antenna_count = static_cast<int>(parse_integer("K", v)); },
       [](const RunConfig& c) { return std::to_string(c.scenario.wpcn.antenna_count); }},
      {"eta", "energy conversion efficiency, in [0,1]",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.conversion_efficiency = parse_double("eta", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.conversion_efficiency); }},
      {"tau", "energy harvest duration, seconds",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.harvest_time_s = parse_double("tau", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.harvest_time_s); }},
      {"P_dbm", "H-AP transmit power, dBm",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.tx_power_dbm = parse_double("P_dbm", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.tx_power_dbm); }},
      {"sigma2_dbm", "noise power, dBm",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.noise_power_dbm = parse_double("sigma2_dbm", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.noise_power_dbm); }},
      {"E_cir", "circuit energy drain per round, watt-seconds",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.circuit_energy_ws = parse_double("E_cir", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.circuit_energy_ws); }},
      {"R", "fixed uplink data rate, bits/s/Hz",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.rate_bits = parse_double("R", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.rate_bits); }},
      {"alpha", "path-loss exponent",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.pathloss_exponent = parse_double("alpha", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.pathloss_exponent); }},
      {"ref_loss", "linear attenuation at the 1 m reference distance",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.ref_loss = parse_double("ref_loss", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.ref_loss); }},
      {"budget_gain", "feasibility gain on the channel-gain product, >= 1",
       [](RunConfig& c, std::string_view v) { c.scenario.wpcn.budget_gain = parse_double("budget_gain", v); },
       [](const RunConfig& c) { return format_number(c.scenario.wpcn.budget_gain); }},
      // scenario
      {"n_devices", "devices per auction instance (also the bidder count)",
       [](RunConfig& c, std::string_view v) {
         c.scenario.n_devices = static_cast<int>(parse_integer("n_devices", v));
         c.auction.n_bidders = c.scenario.n_devices;
       },
       [](const RunConfig& c) { return std::to_string(c.scenario.n_devices); }},
      {"n_samples", "auction instances per dataset",
       [](RunConfig& c, std::string_view v) { c.scenario.n_samples = static_cast<int>(parse_integer("n_samples", v)); },
       [](const RunConfig& c) { return std::to_string(c.scenario.n_samples); }},
      {"j_lo", "similarity preference range, lower end",
       [](RunConfig& c, std::string_view v) { c.scenario.j_lo = parse_double("j_lo", v); },
       [](const RunConfig& c) { return format_number(c.scenario.j_lo); }},
      {"j_hi", "similarity preference range, upper end",
       [](RunConfig& c, std::string_view v) { c.scenario.j_hi = parse_double("j_hi", v); },
       [](const RunConfig& c) { return format_number(c.scenario.j_hi); }},
      {"Ns_lo", "sentence count range, lower end (inclusive)",
       [](RunConfig& c, std::string_view v) { c.scenario.ns_lo = static_cast<int>(parse_integer("Ns_lo", v)); },
       [](const RunConfig& c) { return std::to_string(c.scenario.ns_lo); }},
      {"Ns_hi", "sentence count range, upper end (inclusive)",
       [](RunConfig& c, std::string_view v) { c.scenario.ns_hi = static_cast<int>(parse_integer("Ns_hi", v)); },
       [](const RunConfig& c) { return std::to_string(c.scenario.ns_hi); }},
      {"L_lo", "sentence length range, lower end (inclusive)",
       [](RunConfig& c, std::string_view v) { c.scenario.len_lo = static_cast<int>(parse_integer("L_lo", v)); },
       [](const RunConfig& c) { return std::to_string(c.scenario.len_lo); }},
      {"L_hi", "sentence length range, upper end (inclusive)",
       [](RunConfig& c, std::string_view v) { c.scenario.len_hi = static_cast<int>(parse_integer("L_hi", v)); },
       [](const RunConfig& c) { return std::to_string(c.scenario.len_hi); }},
      {"b_f", "bits per unit feature",
       [](RunConfig& c, std::string_view v) { c.scenario.bits_per_feature = static_cast<int>(parse_integer("b_f", v)); },
       [](const RunConfig& c) { return std::to_string(c.scenario.bits_per_feature); }},
      {"d_lo", "device-AP distance range, lower end, meters",
       [](RunConfig& c, std::string_view v) { c.scenario.dist_lo = parse_double("d_lo", v); },
       [](const RunConfig& c) { return format_number(c.scenario.dist_lo); }},
      {"d_hi", "device-AP distance range, upper end, meters",
       [](RunConfig& c, std::string_view v) { c.scenario.dist_hi = parse_double("d_hi", v); },
       [](const RunConfig& c) { return format_number(c.scenario.dist_hi); }},
      {"jitter", "1 to jitter scores around the curve values, 0 to disable",
       [](RunConfig& c, std::string_view v) {
         const long long x = parse_integer("jitter", v);
         if (x != 0 && x != 1) throw ConfigError("jitter: must be 0 or 1, got " + std::string(v));
         c.scenario.apply_jitter = x == 1;
       },
       [](const RunConfig& c) { return std::string(c.scenario.apply_jitter ? "1" : "0"); }},
      {"seed", "random seed for generation and training",
       [](RunConfig& c, std::string_view v) {
         const long long x = parse_integer("seed", v);
         if (x < 0) throw ConfigError("seed: must be >= 0, got " + std::string(v));
         c.scenario.seed = static_cast<std::uint64_t>(x);
         c.auction.seed = static_cast<std::uint64_t>(x);
       },
       [](const RunConfig& c) { return std::to_string(c.scenario.seed); }},
      // auction training
      {"Q", "linear-function groups per bidder transform",
       [](RunConfig& c, std::string_view v) { c.auction.groups = static_cast<int>(parse_integer("Q", v)); },
       [](const RunConfig& c) { return std::to_string(c.auction.groups); }},
      {"S", "linear functions per group",
       [](RunConfig& c, std::string_view v) { c.auction.lines_per_group = static_cast<int>(parse_integer("S", v)); },
       [](const RunConfig& c) { return std::to_string(c.auction.lines_per_group); }},
      {"kappa", "softmax allocation temperature",
       [](RunConfig& c, std::string_view v) { c.auction.temperature = parse_double("kappa", v); },
       [](const RunConfig& c) { return format_number(c.auction.temperature); }},
      {"lr", "SGD learning rate",
       [](RunConfig& c, std::string_view v) { c.auction.learning_rate = parse_double("lr", v); },
       [](const RunConfig& c) { return format_number(c.auction.learning_rate); }},
      {"batch_size", "samples per SGD step",
       [](RunConfig& c, std::string_view v) { c.auction.batch_size = static_cast<int>(parse_integer("batch_size", v)); },
       [](const RunConfig& c) { return std::to_string(c.auction.batch_size); }},
      {"iterations", "SGD steps",
       [](RunConfig& c, std::string_view v) { c.auction.iterations = static_cast<int>(parse_integer("iterations", v)); },
       [](const RunConfig& c) { return std::to_string(c.auction.iterations); }},
      // output
      {"out_dir", "directory for generated files",
       [](RunConfig& c, std::string_view v) { c.out_dir = std::string(v); },
       [](const RunConfig& c) { return c.out_dir; }},
  };
  return specs;
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& spec : key_specs()) {
    if (key == spec.name) return &spec;
  }
  return nullptr;
}

}  // namespace

void RunConfig::validate() const {
  scenario.validate();
  auction.validate();
  if (auction.n_bidders != scenario.n_devices)
    throw ConfigError("n_devices: scenario and auction bidder counts diverged");
  if (!(auction.learning_rate > 0.0))
    throw ConfigError("lr: must be > 0, got " + format_number(auction.learning_rate));
  if (auction.iterations < 1)
    throw ConfigError("iterations: must be >= 1, got " + std::to_string(auction.iterations));
  if (out_dir.empty()) throw ConfigError("out_dir: must not be empty");
}

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = [] {
    const RunConfig defaults;
    std::vector<KeyInfo> out;
    for (const auto& spec : key_specs())
      out.push_back({spec.name, spec.description, spec.get(defaults)});
    return out;
  }();
  return keys;
}

void apply_key(RunConfig& config, std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ConfigError("unknown key '" + std::string(key) + "'");
  spec->set(config, value);
}

std::string get_key(const RunConfig& config, std::string_view key) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ConfigError("unknown key '" + std::string(key) + "'");
  return spec->get(config);
}

std::string dump_config(const RunConfig& config) {
  std::string out;
  for (const auto& spec : key_specs()) out += std::string(spec.name) + "=" + spec.get(config) + "\n";
  return out;
}

void ConfigBuilder::load_text(std::string_view text, std::string_view source) {
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t' || line.front() == '\r'))
      line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.remove_suffix(1);
    if (line.empty()) continue;

    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(where + ": expected key=value, got '" + std::string(line) + "'");
    std::string_view key = line.substr(0, eq);
    std::string_view value = line.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);

    try {
      apply_key(config_, key, value);
    } catch (const ConfigError& err) {
      throw ConfigError(where + ": " + err.what());
    }
    provenance_[std::string(key)] = where;
  }
}

void ConfigBuilder::load_file(const std::string& path) {
  load_text(io::read_file(path), path);
}

void ConfigBuilder::set_override(std::string_view key, std::string_view value) {
  try {
    apply_key(config_, key, value);
  } catch (const ConfigError& err) {
    throw ConfigError("--" + std::string(key) + ": " + err.what());
  }
  provenance_[std::string(key)] = "--" + std::string(key);
}

RunConfig ConfigBuilder::finalize() const {
  try {
    config_.validate();
  } catch (const std::exception& err) {
    // Attach where the offending key was last assigned, when we know.
    const std::string message = err.what();
    const std::size_t colon = message.find(':');
    if (colon != std::string::npos) {
      const auto it = provenance_.find(message.substr(0, colon));
      if (it != provenance_.end()) throw ConfigError(it->second + ": " + message);
    }
    throw ConfigError(message);
  }
  return config_;
}

}  // namespace semauction::config
