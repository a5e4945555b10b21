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

#include "semauction/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace semauction::checks {

using auction::AuctionNetParams;
using auction::BidMatrix;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format(const char* fmt, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

// Smallest distance to a tie across every discrete selection the loss makes
// at this bid profile: the max/min piece choices of each transform, the
// payment source among the other bidders, the ReLU floor, and the piece
// choices of each payment inverse. A finite-difference step may only be
// trusted when this margin dwarfs it.
double tie_margin(const AuctionNetParams& p, std::span<const double> bids) {
  const int n = p.n_bidders;
  double margin = kInf;
  std::vector<double> transformed(static_cast<std::size_t>(n));
  std::vector<double> group_values(static_cast<std::size_t>(p.groups));

  for (int m = 0; m < n; ++m) {
    for (int q = 0; q < p.groups; ++q) {
      double top = -kInf, second = -kInf;
      for (int s = 0; s < p.lines_per_group; ++s) {
        const std::size_t i = p.index(m, q, s);
        const double v = std::exp(p.log_w[i]) * bids[static_cast<std::size_t>(m)] + p.beta[i];
        if (v > top) {
          second = top;
          top = v;
        } else if (v > second) {
          second = v;
        }
      }
      if (p.lines_per_group >= 2) margin = std::min(margin, top - second);
      group_values[static_cast<std::size_t>(q)] = top;
    }
    double low = kInf, second_low = kInf;
    for (double v : group_values) {
      if (v < low) {
        second_low = low;
        low = v;
      } else if (v < second_low) {
        second_low = v;
      }
    }
    if (p.groups >= 2) margin = std::min(margin, second_low - low);
    transformed[static_cast<std::size_t>(m)] = low;
  }

  for (int m = 0; m < n; ++m) {
    double best = -kInf, second = -kInf;
    for (int other = 0; other < n; ++other) {
      if (other == m) continue;
      const double v = transformed[static_cast<std::size_t>(other)];
      if (v > best) {
        second = best;
        best = v;
      } else if (v > second) {
        second = v;
      }
    }
    if (n >= 3) margin = std::min(margin, best - second);
    margin = std::min(margin, std::abs(best));  // distance to the ReLU kink
    const double paid = std::max(best, 0.0);

    for (int q = 0; q < p.groups; ++q) {
      double low = kInf, second_low = kInf;
      for (int s = 0; s < p.lines_per_group; ++s) {
        const std::size_t i = p.index(m, q, s);
        const double v = (paid - p.beta[i]) / std::exp(p.log_w[i]);
        if (v < low) {
          second_low = low;
          low = v;
        } else if (v < second_low) {
          second_low = v;
        }
      }
      if (p.lines_per_group >= 2) margin = std::min(margin, second_low - low);
      group_values[static_cast<std::size_t>(q)] = low;
    }
    double top = -kInf, second_top = -kInf;
    for (double v : group_values) {
      if (v > top) {
        second_top = top;
        top = v;
      } else if (v > second_top) {
        second_top = v;
      }
    }
    if (p.groups >= 2) margin = std::min(margin, top - second_top);
  }
  return margin;
}

}  // namespace

AuctionNetParams random_params(RandomStream& rng, int n_bidders, int groups, int lines_per_group,
                               double log_w_halfwidth, double beta_halfwidth) {
  AuctionNetParams p = AuctionNetParams::identity(n_bidders, groups, lines_per_group);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p.log_w[i] = rng.uniform(-log_w_halfwidth, log_w_halfwidth);
    p.beta[i] = rng.uniform(-beta_halfwidth, beta_halfwidth);
  }
  return p;
}

CheckResult check_gradient_fd(std::uint64_t seed, int points, double step, double tolerance) {
  RandomStream rng(seed);
  constexpr double kTieFloor = 1e-3;
  constexpr double kZeroFloor = 1e-7;

  double worst = 0.0;
  int checked = 0;
  for (int point = 0; point < points; ++point) {
    AuctionNetParams params;
    BidMatrix batch;
    double temperature = 0.0;
    // Redraw until every piecewise selection has a clear margin.
    while (true) {
      const int n = rng.uniform_int(2, 5);
      const int q = rng.uniform_int(1, 3);
      const int s = rng.uniform_int(1, 4);
      const int rows = rng.uniform_int(1, 5);
      temperature = rng.uniform(2.0, 30.0);
      params = random_params(rng, n, q, s);
      batch = BidMatrix(rows, n);
      for (double& b : batch.data) b = rng.uniform(0.05, 1.5);

      double margin = kInf;
      for (int r = 0; r < rows; ++r) margin = std::min(margin, tie_margin(params, batch.row(r)));
      if (margin > kTieFloor) break;
    }

    const auction::LossGrad analytic = auction::loss_and_gradient(params, batch, temperature);

    auto fd_at = [&](std::vector<double>& coords, std::size_t i) {
      const double saved = coords[i];
      coords[i] = saved + step;
      const double up = auction::loss_and_gradient(params, batch, temperature).loss;
      coords[i] = saved - step;
      const double down = auction::loss_and_gradient(params, batch, temperature).loss;
      coords[i] = saved;
      return (up - down) / (2.0 * step);
    };

    for (std::size_t i = 0; i < params.size(); ++i) {
      const double pairs[2][2] = {{analytic.d_log_w[i], fd_at(params.log_w, i)},
                                  {analytic.d_beta[i], fd_at(params.beta, i)}};
      for (const auto& pair : pairs) {
        const double denom = std::max(std::abs(pair[0]), std::abs(pair[1]));
        ++checked;
        if (denom < kZeroFloor) continue;
        worst = std::max(worst, std::abs(pair[0] - pair[1]) / denom);
      }
    }
  }

  CheckResult result;
  result.name = "gradient-vs-finite-difference";
  result.pass = worst < tolerance;
  result.detail = format("worst relative error %.3g over %.0f coordinates", worst,
                         static_cast<double>(checked));
  return result;
}

CheckResult check_inverse_roundtrip(std::uint64_t seed, int cases, double tolerance) {
  RandomStream rng(seed);
  double worst = 0.0;
  for (int c = 0; c < cases; ++c) {
    const int n = rng.uniform_int(1, 5);
    const int q = rng.uniform_int(1, 4);
    const int s = rng.uniform_int(1, 5);
    const AuctionNetParams params = random_params(rng, n, q, s);
    const int bidder = rng.uniform_int(0, n - 1);
    const double bid = rng.uniform(0.0, 1.5);
    const double recovered =
        auction::inverse_transform(params, bidder, auction::transform(params, bidder, bid));
    worst = std::max(worst, std::abs(recovered - bid));
  }
  CheckResult result;
  result.name = "inverse-transform-roundtrip";
  result.pass = worst < tolerance;
  result.detail = format("worst |inverse(transform(b)) - b| = %.3g over %.0f cases", worst,
                         static_cast<double>(cases));
  return result;
}

CheckResult check_identity_equals_spa(std::uint64_t seed, int instances) {
  RandomStream rng(seed);
  const AuctionNetParams identity = AuctionNetParams::identity(10, 5, 10);
  std::vector<double> bids(10);
  int mismatches = 0;
  for (int i = 0; i < instances; ++i) {
    for (double& b : bids) b = rng.uniform01();
    const auction::HardOutcome ours = auction::run_hard_auction(identity, bids);
    const auction::HardOutcome spa = auction::spa_baseline(bids);
    if (ours.winner != spa.winner || ours.payment != spa.payment) ++mismatches;
  }
  CheckResult result;
  result.name = "identity-initialization-equals-spa";
  result.pass = mismatches == 0;
  result.detail = format("%.0f mismatches over %.0f instances", static_cast<double>(mismatches),
                         static_cast<double>(instances));
  return result;
}

std::vector<CheckResult> run_all_checks() {
  return {check_gradient_fd(), check_inverse_roundtrip(), check_identity_equals_spa()};
}

}  // namespace semauction::checks
