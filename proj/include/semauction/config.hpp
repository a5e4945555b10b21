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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semauction/auction.hpp"
#include "semauction/experiments.hpp"

namespace semauction::config {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Merged run configuration: scenario (which embeds the physical layer),
// auction training settings, and output location. The single n_devices key
// drives both the scenario width and the auction's bidder count, and the
// single seed key drives both generation and training.
struct RunConfig {
  experiments::ScenarioConfig scenario;
  auction::AuctionConfig auction;
  std::string out_dir = "out";

  // Cross-field invariants on top of the per-module validate() calls.
  void validate() const;
};

struct KeyInfo {
  std::string name;
  std::string description;
  std::string default_value;
};

// Every recognized key with its documentation and default, in display order.
const std::vector<KeyInfo>& config_keys();

// Applies one key=value assignment; throws ConfigError for unknown keys or
// unparsable values.
void apply_key(RunConfig& config, std::string_view key, std::string_view value);

// Reads one value back in its textual form; throws ConfigError for unknown
// keys.
std::string get_key(const RunConfig& config, std::string_view key);

// Full key=value listing of a configuration.
std::string dump_config(const RunConfig& config);

// Builds a configuration from defaults plus an optional plain-text file
// (key=value lines, '#' comments) plus command-line overrides, validating the
// result. Errors carry the file/line or flag that caused them.
class ConfigBuilder {
 public:
  // Parses file content; `source` names the file in error messages.
  void load_text(std::string_view text, std::string_view source);
  void load_file(const std::string& path);

  // Command-line override; later assignments win.
  void set_override(std::string_view key, std::string_view value);

  // Validates and returns the merged configuration.
  RunConfig finalize() const;

  const RunConfig& current() const { return config_; }

 private:
  RunConfig config_;
  std::map<std::string, std::string> provenance_;  // key -> "file:line" or "--flag"
};

}  // namespace semauction::config
