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

#include "kblink/features.h"

#include <algorithm>
#include <cmath>

#include "kblink/error.h"

namespace kblink::classify {

LocalFeatures ComputeLocalFeatures(const surface::Spot &spot, ItemId candidate,
                                   const lm::UnigramLM &lm,
                                   const graph::PageRankVector &pagerank,
                                   const ItemRecord *rec) {
  LocalFeatures f;
  // PhraseLogProb <= 0; the max() turns -0.0 into +0.0 for empty phrases.
  f.neg_log_phrase_prob = std::max(0.0, -lm.PhraseLogProb(spot.phrase));
  f.log_popularity = std::log(pagerank.Lookup(candidate));
  if (rec != nullptr) {
    f.n_statements = static_cast<double>(rec->n_statements);
    f.n_sitelinks = static_cast<double>(rec->n_sitelinks);
  }
  return f;
}

Scaler::Scaler(std::vector<std::pair<double, double>> ranges)
    : ranges_(std::move(ranges)) {
  for (const auto &[lo, hi] : ranges_) {
    if (!(lo <= hi)) throw InvalidArgument("scaler range with min > max");
  }
}

Scaler Scaler::Fit(const FeatureMatrix &matrix) {
  if (matrix.rows() == 0) throw InvalidArgument("cannot fit scaler on empty matrix");
  std::vector<std::pair<double, double>> ranges(matrix.cols());
  for (size_t c = 0; c < matrix.cols(); ++c) {
    double lo = matrix.at(0, c), hi = lo;
    for (size_t r = 1; r < matrix.rows(); ++r) {
      lo = std::min(lo, matrix.at(r, c));
      hi = std::max(hi, matrix.at(r, c));
    }
    ranges[c] = {lo, hi};
  }
  return Scaler(std::move(ranges));
}

double Scaler::Scale(size_t column, double x) const {
  const auto [lo, hi] = ranges_.at(column);
  if (hi <= lo) return 0.5;
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

FeatureMatrix Scaler::Transform(const FeatureMatrix &matrix) const {
  if (matrix.cols() != ranges_.size()) {
    throw InvalidArgument("scaler width does not match feature matrix");
  }
  FeatureMatrix out(matrix.rows(), matrix.cols());
  for (size_t r = 0; r < matrix.rows(); ++r) {
    for (size_t c = 0; c < matrix.cols(); ++c) out.at(r, c) = Scale(c, matrix.at(r, c));
  }
  return out;
}

}  // namespace kblink::classify
