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

#ifndef KBLINK_LINEAR_MODEL_H_
#define KBLINK_LINEAR_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kblink/features.h"
#include "kblink/matrix.h"
#include "kblink/semantics.h"

namespace kblink::classify {

inline constexpr uint32_t kModelFormatVersion = 1;

struct TrainConfig {
  double lambda = 1e-3;   // L2 regularization strength
  int epochs = 40;
  uint64_t seed = 42;
  int k = 2;              // propagation steps
  semantics::SimilarityParams similarity;
  double threshold = 0.0;  // decision threshold on the margin

  bool operator==(const TrainConfig &) const = default;
};

// Max-margin linear classifier over propagated local features.
struct LinearModel {
  std::vector<double> weights;  // (k + 1) * kNumLocalFeatures entries
  double bias = 0.0;
  Scaler scaler;                // one range per local feature column
  TrainConfig config;

  // Row-wise weights . x + bias. Throws InvalidArgument on width mismatch.
  std::vector<double> Score(const FeatureMatrix &stacked) const;

  void Save(const std::string &path) const;
  static LinearModel Load(const std::string &path);
  // Serialized bytes; Save writes exactly these.
  std::string Serialize() const;
};

struct SvmSolution {
  std::vector<double> weights;
  double bias = 0.0;
};

// Minimizes lambda/2 |w|^2 + mean hinge(y (w.x + b)) by stochastic
// subgradient descent with step 1/(lambda t), visiting rows in a seeded
// permutation each epoch, and returns the average of the second-half
// iterates. The bias enters as an extra regularized coordinate. Labels are
// +1/-1. Throws InvalidArgument("degenerate labels") when only one class is
// present.
SvmSolution TrainLinearSvm(const FeatureMatrix &x, std::span<const int> labels,
                           double lambda, int epochs, uint64_t seed);

}  // namespace kblink::classify

#endif  // KBLINK_LINEAR_MODEL_H_
