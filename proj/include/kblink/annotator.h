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

// End-to-end linking: spotting, local features, propagation along the
// mention graph, linear scoring and per-spot selection. Training uses the
// same document preparation path as annotation.

#ifndef KBLINK_ANNOTATOR_H_
#define KBLINK_ANNOTATOR_H_

#include <span>
#include <string_view>
#include <vector>

#include "kblink/evaluation.h"
#include "kblink/features.h"
#include "kblink/language_model.h"
#include "kblink/linear_model.h"
#include "kblink/pagerank.h"
#include "kblink/record_store.h"
#include "kblink/semantics.h"
#include "kblink/surface_dictionary.h"

namespace kblink::classify {

// Loaded artifacts shared by training and annotation. Not owned.
struct Resources {
  const surface::SurfaceDictionary *dictionary = nullptr;
  const lm::UnigramLM *language_model = nullptr;
  const graph::PageRankVector *pagerank = nullptr;
  const kb::RecordLookup *records = nullptr;
};

struct PreparedDocument {
  std::vector<surface::Spot> spots;
  semantics::MentionGraph graph;
  FeatureMatrix local;  // unscaled, one row per graph vertex
};

PreparedDocument PrepareDocument(std::string_view text, const Resources &resources,
                                 const semantics::SimilarityParams &params);

// Scales the local block and stacks k propagation steps.
FeatureMatrix StackFeatures(const PreparedDocument &doc, const Scaler &scaler,
                            int k);

struct Selection {
  size_t spot;
  ItemId item;
  double score;
};

// Per spot, the best candidate whose score exceeds |threshold|; ties go to
// the smaller id. |scores| follows the vertex order of EnumerateVertices.
std::vector<Selection> Select(std::span<const surface::Spot> spots,
                              std::span<const double> scores,
                              double threshold = 0.0);

struct CandidateScore {
  ItemId item;
  double score;
};

struct Annotation {
  surface::Spot spot;
  ItemId item;
  double score;
  std::vector<CandidateScore> candidates;  // best first
};

class Annotator {
 public:
  Annotator(Resources resources, LinearModel model);

  std::vector<Annotation> Annotate(std::string_view text) const;
  std::vector<eval::Prediction> Predict(std::string_view text) const;

  const LinearModel &model() const { return model_; }
  const Resources &resources() const { return resources_; }

 private:
  Resources resources_;
  LinearModel model_;
};

struct TrainReport {
  size_t documents = 0;
  size_t rows = 0;
  size_t positives = 0;
  size_t gold_in_kb = 0;
  size_t unreachable = 0;  // gold links no spot can produce
};

// Labels every (spot, candidate) vertex from the gold annotations and fits
// the scaler and the SVM. Throws InvalidArgument("degenerate labels") when
// the rows are all positive or all negative.
LinearModel Train(std::span<const eval::GoldDocument> dataset,
                  const Resources &resources, const TrainConfig &config,
                  TrainReport *report = nullptr);

struct HyperGrid {
  // Deep propagation and a wide window pay off on multi-paragraph text.
  std::vector<int> k = {1, 2, 4, 6, 8};
  std::vector<double> beta = {0.5, 0.85};
  std::vector<double> eta = {0.001, 0.01, 0.1};
  std::vector<uint32_t> max_distance = {200, 1000};
  std::vector<double> lambda = {1e-3};
};

struct GridPoint {
  TrainConfig config;
  double cv_micro_f1 = 0.0;
};

struct GridSearchResult {
  std::vector<GridPoint> points;
  TrainConfig best;
};

// Exhaustive search scored by |folds|-fold cross-validated micro F1. Folds
// are assigned round-robin by document index.
GridSearchResult GridSearch(std::span<const eval::GoldDocument> dataset,
                            const Resources &resources, const TrainConfig &base,
                            const HyperGrid &grid, int folds = 5);

}  // namespace kblink::classify

#endif  // KBLINK_ANNOTATOR_H_
