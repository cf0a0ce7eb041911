// Copyright 2026 The kblink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KBLINK_FEATURES_H_
#define KBLINK_FEATURES_H_

#include <array>
#include <utility>
#include <vector>

#include "kblink/item.h"
#include "kblink/language_model.h"
#include "kblink/matrix.h"
#include "kblink/pagerank.h"
#include "kblink/surface_dictionary.h"

namespace kblink::classify {

// Column order of the local feature block.
enum LocalFeatureColumn : size_t {
  kNegLogPhraseProb = 0,
  kLogPopularity = 1,
  kStatements = 2,
  kSitelinks = 3,
  kBias = 4,
  kNumLocalFeatures = 5,
};

// Context-free compatibility of a candidate with its phrase.
struct LocalFeatures {
  double neg_log_phrase_prob = 0.0;  // -log p(phrase), >= 0
  double log_popularity = 0.0;       // log PageRank, floored for unknown items
  double n_statements = 0.0;
  double n_sitelinks = 0.0;
  double bias = 1.0;

  std::array<double, kNumLocalFeatures> ToArray() const {
    return {neg_log_phrase_prob, log_popularity, n_statements, n_sitelinks, bias};
  }
};

// |rec| may be null for candidates missing from the record store; the count
// features are then 0.
LocalFeatures ComputeLocalFeatures(const surface::Spot &spot, ItemId candidate,
                                   const lm::UnigramLM &lm,
                                   const graph::PageRankVector &pagerank,
                                   const ItemRecord *rec);

// Per-column affine map onto [0, 1], fitted on training rows only.
class Scaler {
 public:
  Scaler() = default;
  explicit Scaler(std::vector<std::pair<double, double>> ranges);

  // Throws InvalidArgument for an empty matrix.
  static Scaler Fit(const FeatureMatrix &matrix);

  // (x - min) / (max - min) clamped to [0, 1]; constant columns map to 0.5.
  double Scale(size_t column, double x) const;
  FeatureMatrix Transform(const FeatureMatrix &matrix) const;

  const std::vector<std::pair<double, double>> &ranges() const { return ranges_; }
  size_t size() const { return ranges_.size(); }

  bool operator==(const Scaler &) const = default;

 private:
  std::vector<std::pair<double, double>> ranges_;  // (min, max)
};

}  // namespace kblink::classify

#endif  // KBLINK_FEATURES_H_
