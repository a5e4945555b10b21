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
//
// Runtime verification of the auction mathematics. The gradient check compares
// the analytic gradient against central finite differences of the loss (which
// exercises only the forward path), the roundtrip check drives random bids
// through transform then inverse_transform, and the SPA check compares the
// freshly initialized hard auction against the raw second-price baseline.
// These back both the CLI selfcheck subcommand and the test suites.

#include <cstdint>
#include <string>
#include <vector>

#include "semauction/auction.hpp"
#include "semauction/rng.hpp"

namespace semauction::checks {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Draws random auction shapes, parameters and bid batches, rejecting
// configurations with a near-tie in any min/max selection, payment source or
// ReLU floor (a finite-difference step across a kink would be meaningless
// there). Reports the worst per-coordinate relative error.
CheckResult check_gradient_fd(std::uint64_t seed = 7, int points = 100, double step = 1e-6,
                              double tolerance = 1e-4);

// |inverse(transform(b)) - b| over random parameters and bids in [0, 1.5].
CheckResult check_inverse_roundtrip(std::uint64_t seed = 11, int cases = 10000,
                                    double tolerance = 1e-9);

// Exact (winner, payment) agreement between the identity-initialized hard
// auction and the raw second-price baseline.
CheckResult check_identity_equals_spa(std::uint64_t seed = 13, int instances = 10000);

std::vector<CheckResult> run_all_checks();

// Random parameters with slopes around 1 and offsets around 0; shared by the
// checks and the property suites.
auction::AuctionNetParams random_params(RandomStream& rng, int n_bidders, int groups,
                                        int lines_per_group, double log_w_halfwidth = 0.7,
                                        double beta_halfwidth = 0.5);

}  // namespace semauction::checks
