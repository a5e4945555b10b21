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

#include <span>
#include <vector>

#include "semauction/rng.hpp"

namespace semauction::valuation {

// Lookup table mapping an integer feature dimension d in [1, max_dim] to a
// score in [0, 1]. The jitter half-width is the mean of the successive score
// differences, which telescopes to (last - first) / (max_dim - 1).
class ScoreCurve {
 public:
  // scores[i] is the score at dimension i + 1. Requires at least two entries,
  // all within [0, 1].
  explicit ScoreCurve(std::vector<double> scores);

  int max_dim() const { return static_cast<int>(scores_.size()); }
  double at(int dim) const;  // dim in [1, max_dim]
  double jitter_halfwidth() const { return jitter_halfwidth_; }
  const std::vector<double>& scores() const { return scores_; }

 private:
  std::vector<double> scores_;
  double jitter_halfwidth_ = 0.0;
};

// Built-in 16-point curves of the pretrained text-recovery model: sentence
// similarity and 1-gram BLEU versus channel-encoder output dimension.
const ScoreCurve& builtin_similarity_curve();
const ScoreCurve& builtin_bleu_curve();

// Formats a curve score exactly as stored (the built-in tables carry at most
// eight significant digits).
std::string format_score(double score);

// Per-device text workload and metric preference.
struct DeviceProfile {
  int sentence_count = 1;     // N_s
  int sentence_length = 1;    // padded length L
  int bits_per_feature = 32;  // b_f
  double similarity_weight = 0.5;  // j in [0, 1]; BLEU weight is 1 - j

  void validate() const;
};

struct Valuation {
  double similarity = 0.0;
  double bleu = 0.0;
  double value = 0.0;      // j * similarity + (1 - j) * bleu
  int effective_dim = 0;   // integer dimension a lookup at this budget uses
};

// Feature dimension the bit budget affords: bits / (N_s * L * b_f).
double feature_dim(double bits, const DeviceProfile& profile);

// Floors dim to an integer, clamps to [0, max_dim], and reads the curve.
// Dimension 0 (budget below one feature) scores 0.
double lookup_score(const ScoreCurve& curve, double dim);

// Uniform draw on [base - halfwidth, base + halfwidth], clamped to [0, 1].
double jitter_score(RandomStream& rng, double base, double halfwidth);

// Combines the two scores with the device preference. Rejects scores outside
// [0, 1].
Valuation make_valuation(const DeviceProfile& profile, double similarity, double bleu);

// BLEU between a candidate (recovered) and reference (original) token
// sequence. weights[i] is the weight of (i+1)-grams and must sum to 1; the
// maximum order must not exceed either sequence length. Zero precision at any
// order yields 0. The length term penalizes candidates longer than the
// reference: log BLEU = min(1 - len(cand)/len(ref), 0) + sum_i u_i log p_i.
double bleu_score(std::span<const int> candidate, std::span<const int> reference,
                  std::span<const double> weights);

// Cosine similarity of two equal-length embedding vectors; rejects zero-norm
// input.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

}  // namespace semauction::valuation
