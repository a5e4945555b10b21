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

#include "semauction/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>

namespace semauction::valuation {

ScoreCurve::ScoreCurve(std::vector<double> scores) : scores_(std::move(scores)) {
  if (scores_.size() < 2) throw std::invalid_argument("ScoreCurve: need at least two points");
  for (double s : scores_) {
    if (!(s >= 0.0 && s <= 1.0))
      throw std::invalid_argument("ScoreCurve: score out of [0, 1]: " + std::to_string(s));
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < scores_.size(); ++i) sum += scores_[i] - scores_[i - 1];
  jitter_halfwidth_ = sum / static_cast<double>(scores_.size() - 1);
}

double ScoreCurve::at(int dim) const {
  if (dim < 1 || dim > max_dim())
    throw std::out_of_range("ScoreCurve: dimension " + std::to_string(dim) + " outside [1, " +
                            std::to_string(max_dim()) + "]");
  return scores_[static_cast<std::size_t>(dim - 1)];
}

const ScoreCurve& builtin_similarity_curve() {
  static const ScoreCurve curve(std::vector<double>{
      0.39550235, 0.40009948, 0.40945041, 0.41866887, 0.42247792, 0.42490115, 0.4295931,
      0.43368545, 0.43733177, 0.4519554, 0.47728359, 0.51547686, 0.55437698, 0.61085957,
      0.7460733, 0.86169747});
  return curve;
}

const ScoreCurve& builtin_bleu_curve() {
  static const ScoreCurve curve(std::vector<double>{
      0.0944817, 0.09667912, 0.09386748, 0.10047062, 0.10116262, 0.10300542, 0.11076793,
      0.11739845, 0.12781957, 0.15357989, 0.1940025, 0.27020956, 0.34242301, 0.44607532,
      0.65054165, 0.82109432});
  return curve;
}

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8g", score);
  return buf;
}

void DeviceProfile::validate() const {
  if (sentence_count < 1)
    throw std::invalid_argument("Ns: must be >= 1, got " + std::to_string(sentence_count));
  if (sentence_length < 1)
    throw std::invalid_argument("L: must be >= 1, got " + std::to_string(sentence_length));
  if (bits_per_feature < 1)
    throw std::invalid_argument("b_f: must be >= 1, got " + std::to_string(bits_per_feature));
  if (!(similarity_weight >= 0.0 && similarity_weight <= 1.0))
    throw std::invalid_argument("j: must be in [0, 1], got " + std::to_string(similarity_weight));
}

double feature_dim(double bits, const DeviceProfile& profile) {
  profile.validate();
  if (!(bits >= 0.0)) throw std::invalid_argument("feature_dim: bits must be >= 0");
  return bits / (static_cast<double>(profile.sentence_count) *
                 static_cast<double>(profile.sentence_length) *
                 static_cast<double>(profile.bits_per_feature));
}

double lookup_score(const ScoreCurve& curve, double dim) {
  // A partial feature dimension cannot be decoded, so floor; extra budget past
  // the trained maximum buys nothing, so clamp.
  int d = static_cast<int>(std::floor(dim));
  d = std::clamp(d, 0, curve.max_dim());
  return d == 0 ? 0.0 : curve.at(d);
}

double jitter_score(RandomStream& rng, double base, double halfwidth) {
  if (!(halfwidth >= 0.0)) throw std::invalid_argument("jitter_score: half-width must be >= 0");
  const double drawn = rng.uniform(base - halfwidth, base + halfwidth);
  return std::clamp(drawn, 0.0, 1.0);
}

Valuation make_valuation(const DeviceProfile& profile, double similarity, double bleu) {
  profile.validate();
  if (!(similarity >= 0.0 && similarity <= 1.0))
    throw std::invalid_argument("valuation: similarity score out of [0, 1]: " + std::to_string(similarity));
  if (!(bleu >= 0.0 && bleu <= 1.0))
    throw std::invalid_argument("valuation: BLEU score out of [0, 1]: " + std::to_string(bleu));
  Valuation v;
  v.similarity = similarity;
  v.bleu = bleu;
  v.value = profile.similarity_weight * similarity + (1.0 - profile.similarity_weight) * bleu;
  return v;
}

double bleu_score(std::span<const int> candidate, std::span<const int> reference,
                  std::span<const double> weights) {
  if (candidate.empty() || reference.empty())
    throw std::invalid_argument("bleu_score: empty sequence");
  if (weights.empty()) throw std::invalid_argument("bleu_score: no n-gram weights");
  double weight_sum = 0.0;
  for (double w : weights) weight_sum += w;
  if (std::abs(weight_sum - 1.0) > 1e-9)
    throw std::invalid_argument("bleu_score: weights must sum to 1");
  const std::size_t max_order = weights.size();
  if (max_order > candidate.size() || max_order > reference.size())
    throw std::invalid_argument("bleu_score: n-gram order exceeds sequence length");

  double log_bleu =
      std::min(1.0 - static_cast<double>(candidate.size()) / static_cast<double>(reference.size()), 0.0);

  for (std::size_t order = 1; order <= max_order; ++order) {
    std::map<std::vector<int>, int> ref_counts;
    for (std::size_t i = 0; i + order <= reference.size(); ++i)
      ++ref_counts[std::vector<int>(reference.begin() + i, reference.begin() + i + order)];

    std::map<std::vector<int>, int> cand_counts;
    for (std::size_t i = 0; i + order <= candidate.size(); ++i)
      ++cand_counts[std::vector<int>(candidate.begin() + i, candidate.begin() + i + order)];

    int clipped = 0;
    int total = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) clipped += std::min(count, it->second);
    }
    if (clipped == 0) return 0.0;
    log_bleu += weights[order - 1] * std::log(static_cast<double>(clipped) / static_cast<double>(total));
  }
  return std::exp(log_bleu);
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.empty() || u.size() != v.size())
    throw std::invalid_argument("cosine_similarity: vectors must have equal nonzero length");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("cosine_similarity: zero-norm vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

}  // namespace semauction::valuation
