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
// Trainable single-item auction. Each bidder owns a strictly increasing
// piecewise-linear transform (min over Q groups of max over S positive-slope
// lines). The item is allocated by a softmax over the transformed bids plus a
// zero-valued dummy entry (a no-sale option), the winner's payment is the
// second-highest transformed bid floored at zero and mapped back through the
// winner's inverse transform, and the negated expected revenue is minimized
// with SGD. Because each bidder's payment never depends on its own bid and
// the transforms are strictly increasing, the hard (argmax) auction is
// dominant-strategy truthful for ANY parameter values; training only moves
// revenue.

#include <cstdint>
#include <span>
#include <vector>

namespace semauction::auction {

struct AuctionConfig {
  int n_bidders = 10;       // N
  int groups = 5;           // Q
  int lines_per_group = 10; // S
  double temperature = 1000.0;  // softmax sharpness kappa
  double learning_rate = 1e-3;
  int batch_size = 100;
  int iterations = 2000;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Per-bidder transform parameters. Slopes are stored in the log domain so
// that unconstrained SGD keeps every effective slope exp(log_w) strictly
// positive, which is what makes each transform strictly increasing and
// invertible.
struct AuctionNetParams {
  int n_bidders = 0;
  int groups = 0;
  int lines_per_group = 0;
  std::vector<double> log_w;  // n_bidders * groups * lines_per_group
  std::vector<double> beta;   // same shape

  // Identity initialization: log_w = 0 (slopes 1) and beta = 0, so every
  // transform starts as the identity and the mechanism starts exactly at the
  // second-price auction.
  static AuctionNetParams identity(int n_bidders, int groups, int lines_per_group);

  std::size_t index(int bidder, int group, int line) const {
    return (static_cast<std::size_t>(bidder) * static_cast<std::size_t>(groups) +
            static_cast<std::size_t>(group)) *
               static_cast<std::size_t>(lines_per_group) +
           static_cast<std::size_t>(line);
  }
  std::size_t size() const { return log_w.size(); }
  void validate() const;
};

// Result of one soft (training-time) evaluation on a bid profile.
struct AuctionOutcome {
  std::vector<double> transformed;  // N + 1 entries, dummy 0 last
  std::vector<double> alloc;        // softmax allocation, N + 1 entries
  std::vector<double> payments;     // per-bidder conditional payment, bid space
  int winner = 0;                   // argmax of transformed; == N means no sale
  double revenue = 0.0;             // sum over real bidders of alloc * payment
};

// Hard (test-time) outcome: the argmax winner and its payment. winner == N
// (the dummy index) means no sale and zero payment; losers always pay 0.
struct HardOutcome {
  int winner = 0;
  double payment = 0.0;
};

// Row-major bid matrix: rows are auction instances, columns are bidders.
struct BidMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  BidMatrix() = default;
  BidMatrix(int rows_, int cols_) : rows(rows_), cols(cols_), data(static_cast<std::size_t>(rows_) * cols_) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  std::span<const double> row(int r) const {
    return std::span<const double>(data).subspan(static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols));
  }
};

// Monotone transform: min over groups of max over lines of (slope*bid + beta).
double transform(const AuctionNetParams& params, int bidder, double bid);

// Exact inverse of transform: max over groups of min over lines of
// (y - beta) / slope.
double inverse_transform(const AuctionNetParams& params, int bidder, double y);

// Softmax of temperature * transformed, computed with max subtraction.
// transformed carries N + 1 entries with the dummy's 0 last.
std::vector<double> allocate_soft(std::span<const double> transformed, double temperature);

// Second-highest-price payment in transformed space: the max over the OTHER
// real bidders' transformed values, floored at 0 (the floor is the dummy's
// entry winning the max).
double spa0_payment(std::span<const double> transformed, int bidder);

// Full soft evaluation of one bid profile.
AuctionOutcome forward(const AuctionNetParams& params, std::span<const double> bids, double temperature);

struct LossGrad {
  double loss = 0.0;            // negated mean revenue over the batch
  std::vector<double> d_log_w;  // same shape as params
  std::vector<double> d_beta;
};

// Analytic gradient of the batch loss. min/max selections, the payment
// source, and the ReLU floor route gradients through the active piece only
// (ties resolved to the lowest index); the softmax contributes its standard
// Jacobian; slope gradients carry the exp chain factor of the log-domain
// storage.
LossGrad loss_and_gradient(const AuctionNetParams& params, const BidMatrix& batch, double temperature);

struct TrainResult {
  AuctionNetParams params;
  std::vector<double> revenue_history;  // soft minibatch revenue per step, pre-update
};

// Plain SGD on shuffled minibatches from the identity initialization.
// Deterministic for a fixed config.
TrainResult train(const AuctionConfig& config, const BidMatrix& dataset);

// Hard auction: argmax over transformed bids including the dummy (lowest
// index wins ties).
HardOutcome run_hard_auction(const AuctionNetParams& params, std::span<const double> bids);

// Untransformed second-price baseline: highest raw bid wins, pays the
// second-highest raw bid. Requires at least two bidders.
HardOutcome spa_baseline(std::span<const double> bids);

// Maximum utility gain the given bidder can obtain by misreporting onto the
// grid, with its true value and everyone else's bids held fixed. Utility is
// value minus payment when winning and 0 otherwise.
double ic_regret(const AuctionNetParams& params, std::span<const double> bids, int bidder,
                 std::span<const double> misreport_grid);

}  // namespace semauction::auction
