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

#include "semauction/auction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "semauction/rng.hpp"

namespace semauction::auction {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PieceRef {
  int group = 0;
  int line = 0;
};

// Transform evaluation against precomputed slopes. Strict comparisons keep
// the lowest-index piece on ties, matching the gradient routing.
double eval_transform(const AuctionNetParams& p, const std::vector<double>& slopes, int bidder,
                      double bid, PieceRef* active) {
  double best = kInf;
  PieceRef best_piece;
  for (int q = 0; q < p.groups; ++q) {
    double group_max = -kInf;
    int group_line = 0;
    for (int s = 0; s < p.lines_per_group; ++s) {
      const std::size_t i = p.index(bidder, q, s);
      const double v = slopes[i] * bid + p.beta[i];
      if (v > group_max) {
        group_max = v;
        group_line = s;
      }
    }
    if (group_max < best) {
      best = group_max;
      best_piece = {q, group_line};
    }
  }
  if (active != nullptr) *active = best_piece;
  return best;
}

double eval_inverse(const AuctionNetParams& p, const std::vector<double>& slopes, int bidder,
                    double y, PieceRef* active) {
  double best = -kInf;
  PieceRef best_piece;
  for (int q = 0; q < p.groups; ++q) {
    double group_min = kInf;
    int group_line = 0;
    for (int s = 0; s < p.lines_per_group; ++s) {
      const std::size_t i = p.index(bidder, q, s);
      const double v = (y - p.beta[i]) / slopes[i];
      if (v < group_min) {
        group_min = v;
        group_line = s;
      }
    }
    if (group_min > best) {
      best = group_min;
      best_piece = {q, group_line};
    }
  }
  if (active != nullptr) *active = best_piece;
  return best;
}

std::vector<double> effective_slopes(const AuctionNetParams& p) {
  std::vector<double> slopes(p.size());
  for (std::size_t i = 0; i < slopes.size(); ++i) slopes[i] = std::exp(p.log_w[i]);
  return slopes;
}

// Payment source in transformed space: the strongest OTHER real bidder, with
// the dummy's 0 appended last so a tie at 0 routes to the real bidder.
// Returns the source index (dummy == n_bidders) through *source.
double spa0_with_source(std::span<const double> transformed, int n_bidders, int bidder, int* source) {
  double best = -kInf;
  int src = -1;
  for (int m = 0; m < n_bidders; ++m) {
    if (m == bidder) continue;
    if (transformed[static_cast<std::size_t>(m)] > best) {
      best = transformed[static_cast<std::size_t>(m)];
      src = m;
    }
  }
  if (best < 0.0) {
    best = 0.0;
    src = n_bidders;
  }
  if (source != nullptr) *source = src;
  return best;
}

int argmax_lowest(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

void check_bidder(const AuctionNetParams& params, int bidder) {
  if (bidder < 0 || bidder >= params.n_bidders)
    throw std::invalid_argument("bidder index " + std::to_string(bidder) + " outside [0, " +
                                std::to_string(params.n_bidders) + ")");
}

}  // namespace

void AuctionConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (n_bidders < 2) fail("n_devices: must be >= 2, got " + std::to_string(n_bidders));
  if (groups < 1) fail("Q: must be >= 1, got " + std::to_string(groups));
  if (lines_per_group < 1) fail("S: must be >= 1, got " + std::to_string(lines_per_group));
  if (!(temperature > 0.0)) fail("kappa: must be > 0, got " + std::to_string(temperature));
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    fail("lr: must be finite and >= 0, got " + std::to_string(learning_rate));
  if (batch_size < 1) fail("batch_size: must be >= 1, got " + std::to_string(batch_size));
  if (iterations < 0) fail("iterations: must be >= 0, got " + std::to_string(iterations));
}

AuctionNetParams AuctionNetParams::identity(int n_bidders, int groups, int lines_per_group) {
  if (n_bidders < 1 || groups < 1 || lines_per_group < 1)
    throw std::invalid_argument("AuctionNetParams: all shape parameters must be >= 1");
  AuctionNetParams p;
  p.n_bidders = n_bidders;
  p.groups = groups;
  p.lines_per_group = lines_per_group;
  const std::size_t total = static_cast<std::size_t>(n_bidders) * groups * lines_per_group;
  p.log_w.assign(total, 0.0);
  p.beta.assign(total, 0.0);
  return p;
}

void AuctionNetParams::validate() const {
  const std::size_t total = static_cast<std::size_t>(n_bidders) * groups * lines_per_group;
  if (n_bidders < 1 || groups < 1 || lines_per_group < 1 || log_w.size() != total ||
      beta.size() != total)
    throw std::invalid_argument("AuctionNetParams: inconsistent shape");
}

double transform(const AuctionNetParams& params, int bidder, double bid) {
  check_bidder(params, bidder);
  double best = kInf;
  for (int q = 0; q < params.groups; ++q) {
    double group_max = -kInf;
    for (int s = 0; s < params.lines_per_group; ++s) {
      const std::size_t i = params.index(bidder, q, s);
      group_max = std::max(group_max, std::exp(params.log_w[i]) * bid + params.beta[i]);
    }
    best = std::min(best, group_max);
  }
  return best;
}

double inverse_transform(const AuctionNetParams& params, int bidder, double y) {
  check_bidder(params, bidder);
  double best = -kInf;
  for (int q = 0; q < params.groups; ++q) {
    double group_min = kInf;
    for (int s = 0; s < params.lines_per_group; ++s) {
      const std::size_t i = params.index(bidder, q, s);
      group_min = std::min(group_min, (y - params.beta[i]) / std::exp(params.log_w[i]));
    }
    best = std::max(best, group_min);
  }
  return best;
}

std::vector<double> allocate_soft(std::span<const double> transformed, double temperature) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("allocate_soft: temperature must be > 0");
  if (transformed.empty()) throw std::invalid_argument("allocate_soft: empty input");
  double peak = -kInf;
  for (double t : transformed) peak = std::max(peak, temperature * t);
  std::vector<double> probs(transformed.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < transformed.size(); ++i) {
    probs[i] = std::exp(temperature * transformed[i] - peak);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

double spa0_payment(std::span<const double> transformed, int bidder) {
  const int n_bidders = static_cast<int>(transformed.size()) - 1;
  if (bidder < 0 || bidder >= n_bidders)
    throw std::invalid_argument("spa0_payment: bidder index outside the real bidders");
  return spa0_with_source(transformed, n_bidders, bidder, nullptr);
}

AuctionOutcome forward(const AuctionNetParams& params, std::span<const double> bids, double temperature) {
  params.validate();
  const int n = params.n_bidders;
  if (static_cast<int>(bids.size()) != n)
    throw std::invalid_argument("forward: expected " + std::to_string(n) + " bids, got " +
                                std::to_string(bids.size()));

  AuctionOutcome out;
  out.transformed.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) out.transformed[static_cast<std::size_t>(i)] = transform(params, i, bids[static_cast<std::size_t>(i)]);
  out.transformed[static_cast<std::size_t>(n)] = 0.0;

  out.alloc = allocate_soft(out.transformed, temperature);

  out.payments.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.payments[static_cast<std::size_t>(i)] = inverse_transform(params, i, spa0_payment(out.transformed, i));

  out.winner = argmax_lowest(out.transformed);
  out.revenue = 0.0;
  for (int i = 0; i < n; ++i)
    out.revenue += out.alloc[static_cast<std::size_t>(i)] * out.payments[static_cast<std::size_t>(i)];
  return out;
}

LossGrad loss_and_gradient(const AuctionNetParams& params, const BidMatrix& batch, double temperature) {
  params.validate();
  if (batch.rows < 1) throw std::invalid_argument("loss_and_gradient: empty batch");
  if (batch.cols != params.n_bidders)
    throw std::invalid_argument("loss_and_gradient: batch width does not match bidder count");
  if (!(temperature > 0.0))
    throw std::invalid_argument("loss_and_gradient: temperature must be > 0");

  const int n = params.n_bidders;
  const std::vector<double> slopes = effective_slopes(params);

  LossGrad out;
  out.d_log_w.assign(params.size(), 0.0);
  out.d_beta.assign(params.size(), 0.0);

  std::vector<double> transformed(static_cast<std::size_t>(n) + 1);
  std::vector<double> payments(static_cast<std::size_t>(n));
  std::vector<double> payment_slope(static_cast<std::size_t>(n));
  std::vector<double> d_transformed(static_cast<std::size_t>(n));
  std::vector<PieceRef> transform_piece(static_cast<std::size_t>(n));
  std::vector<PieceRef> payment_piece(static_cast<std::size_t>(n));
  std::vector<int> payment_source(static_cast<std::size_t>(n));

  double revenue_sum = 0.0;
  for (int r = 0; r < batch.rows; ++r) {
    const std::span<const double> bids = batch.row(r);

    for (int m = 0; m < n; ++m)
      transformed[static_cast<std::size_t>(m)] =
          eval_transform(params, slopes, m, bids[static_cast<std::size_t>(m)], &transform_piece[static_cast<std::size_t>(m)]);
    transformed[static_cast<std::size_t>(n)] = 0.0;

    const std::vector<double> alloc = allocate_soft(transformed, temperature);

    double revenue = 0.0;
    for (int m = 0; m < n; ++m) {
      const double paid_transformed =
          spa0_with_source(transformed, n, m, &payment_source[static_cast<std::size_t>(m)]);
      payments[static_cast<std::size_t>(m)] =
          eval_inverse(params, slopes, m, paid_transformed, &payment_piece[static_cast<std::size_t>(m)]);
      payment_slope[static_cast<std::size_t>(m)] =
          slopes[params.index(m, payment_piece[static_cast<std::size_t>(m)].group,
                              payment_piece[static_cast<std::size_t>(m)].line)];
      revenue += alloc[static_cast<std::size_t>(m)] * payments[static_cast<std::size_t>(m)];
    }
    revenue_sum += revenue;

    // d revenue / d transformed[m], softmax path: kappa * z_m * (p_m - r).
    for (int m = 0; m < n; ++m)
      d_transformed[static_cast<std::size_t>(m)] =
          temperature * alloc[static_cast<std::size_t>(m)] * (payments[static_cast<std::size_t>(m)] - revenue);

    // Payment path: the active inverse piece of each bidder, plus the flow
    // into the transformed bid that sets its price.
    for (int m = 0; m < n; ++m) {
      const std::size_t mi = static_cast<std::size_t>(m);
      const std::size_t pi =
          params.index(m, payment_piece[mi].group, payment_piece[mi].line);
      out.d_log_w[pi] += alloc[mi] * (-payments[mi]);
      out.d_beta[pi] += alloc[mi] * (-1.0 / payment_slope[mi]);
      if (payment_source[mi] < n)
        d_transformed[static_cast<std::size_t>(payment_source[mi])] += alloc[mi] / payment_slope[mi];
    }

    // Transform path: route each bidder's accumulated sensitivity through its
    // active (group, line).
    for (int m = 0; m < n; ++m) {
      const std::size_t mi = static_cast<std::size_t>(m);
      if (d_transformed[mi] == 0.0) continue;
      const std::size_t ti = params.index(m, transform_piece[mi].group, transform_piece[mi].line);
      out.d_log_w[ti] += d_transformed[mi] * bids[mi] * slopes[ti];
      out.d_beta[ti] += d_transformed[mi];
    }
  }

  const double scale = -1.0 / static_cast<double>(batch.rows);
  out.loss = scale * revenue_sum;
  for (double& g : out.d_log_w) g *= scale;
  for (double& g : out.d_beta) g *= scale;
  return out;
}

TrainResult train(const AuctionConfig& config, const BidMatrix& dataset) {
  config.validate();
  if (dataset.rows < 1) throw std::invalid_argument("train: empty dataset");
  if (dataset.cols != config.n_bidders)
    throw std::invalid_argument("train: dataset width " + std::to_string(dataset.cols) +
                                " does not match n_devices " + std::to_string(config.n_bidders));
  if (dataset.rows < config.batch_size)
    throw std::invalid_argument("train: dataset smaller than one batch");

  TrainResult result;
  result.params = AuctionNetParams::identity(config.n_bidders, config.groups, config.lines_per_group);
  result.revenue_history.resize(static_cast<std::size_t>(config.iterations));

  RandomStream rng(config.seed);
  std::vector<int> order(static_cast<std::size_t>(dataset.rows));
  for (int i = 0; i < dataset.rows; ++i) order[static_cast<std::size_t>(i)] = i;
  int cursor = dataset.rows;  // forces a shuffle before the first batch

  BidMatrix batch(config.batch_size, dataset.cols);
  for (int it = 0; it < config.iterations; ++it) {
    for (int b = 0; b < config.batch_size; ++b) {
      if (cursor == dataset.rows) {
        shuffle(order, rng);
        cursor = 0;
      }
      const int src = order[static_cast<std::size_t>(cursor++)];
      for (int c = 0; c < dataset.cols; ++c) batch.at(b, c) = dataset.at(src, c);
    }

    const LossGrad lg = loss_and_gradient(result.params, batch, config.temperature);
    result.revenue_history[static_cast<std::size_t>(it)] = -lg.loss;
    for (std::size_t i = 0; i < result.params.size(); ++i) {
      result.params.log_w[i] -= config.learning_rate * lg.d_log_w[i];
      result.params.beta[i] -= config.learning_rate * lg.d_beta[i];
    }
  }
  return result;
}

HardOutcome run_hard_auction(const AuctionNetParams& params, std::span<const double> bids) {
  params.validate();
  const int n = params.n_bidders;
  if (static_cast<int>(bids.size()) != n)
    throw std::invalid_argument("run_hard_auction: expected " + std::to_string(n) + " bids");

  std::vector<double> transformed(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) transformed[static_cast<std::size_t>(i)] = transform(params, i, bids[static_cast<std::size_t>(i)]);
  transformed[static_cast<std::size_t>(n)] = 0.0;

  const int winner = argmax_lowest(transformed);
  if (winner == n) return {n, 0.0};  // the dummy wins: no sale
  return {winner, inverse_transform(params, winner, spa0_payment(transformed, winner))};
}

HardOutcome spa_baseline(std::span<const double> bids) {
  if (bids.size() < 2) throw std::invalid_argument("spa_baseline: need at least two bidders");
  const int winner = argmax_lowest(bids);
  double second = -kInf;
  for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
    if (i == winner) continue;
    second = std::max(second, bids[static_cast<std::size_t>(i)]);
  }
  return {winner, second};
}

double ic_regret(const AuctionNetParams& params, std::span<const double> bids, int bidder,
                 std::span<const double> misreport_grid) {
  params.validate();
  check_bidder(params, bidder);
  if (misreport_grid.empty()) throw std::invalid_argument("ic_regret: empty misreport grid");

  const double value = bids[static_cast<std::size_t>(bidder)];
  std::vector<double> working(bids.begin(), bids.end());

  auto utility = [&](double report) {
    working[static_cast<std::size_t>(bidder)] = report;
    const HardOutcome out = run_hard_auction(params, working);
    return out.winner == bidder ? value - out.payment : 0.0;
  };

  const double truthful = utility(value);
  double regret = -kInf;
  for (double report : misreport_grid) regret = std::max(regret, utility(report) - truthful);
  return regret;
}

}  // namespace semauction::auction
