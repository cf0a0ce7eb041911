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

#include "kblink/annotator.h"

#include <algorithm>

#include "kblink/error.h"

namespace kblink::classify {

namespace {

void CheckResources(const Resources &r) {
  if (!r.dictionary || !r.language_model || !r.pagerank || !r.records) {
    throw InvalidArgument("annotation resources incomplete");
  }
}

// Gold target per spot: the first in-KB gold span overlapping it.
std::vector<std::optional<ItemId>> SpotTargets(const PreparedDocument &doc,
                                               const eval::GoldDocument &gold,
                                               TrainReport &report) {
  std::vector<std::optional<ItemId>> targets(doc.spots.size());
  for (const auto &g : gold.gold) {
    if (!g.target) continue;
    ++report.gold_in_kb;
    bool reachable = false;
    for (size_t s = 0; s < doc.spots.size(); ++s) {
      const auto &spot = doc.spots[s];
      if (std::max(spot.start, g.start) >= std::min(spot.end, g.end)) continue;
      if (!targets[s]) targets[s] = g.target;
      if (Contains(spot.candidates, *g.target)) reachable = true;
      break;
    }
    if (!reachable) ++report.unreachable;
  }
  return targets;
}

}  // namespace

PreparedDocument PrepareDocument(std::string_view text, const Resources &resources,
                                 const semantics::SimilarityParams &params) {
  CheckResources(resources);
  PreparedDocument doc;
  doc.spots = resources.dictionary->FindSpots(text);
  doc.graph = semantics::BuildMentionGraph(doc.spots, *resources.records, params, text);
  doc.local = FeatureMatrix(doc.graph.size(), kNumLocalFeatures);
  for (size_t v = 0; v < doc.graph.size(); ++v) {
    const auto &vertex = doc.graph.vertices[v];
    LocalFeatures f = ComputeLocalFeatures(
        doc.spots[vertex.spot], vertex.item, *resources.language_model,
        *resources.pagerank, resources.records->Find(vertex.item));
    auto values = f.ToArray();
    std::copy(values.begin(), values.end(), doc.local.row(v).begin());
  }
  return doc;
}

FeatureMatrix StackFeatures(const PreparedDocument &doc, const Scaler &scaler,
                            int k) {
  return semantics::Propagate(doc.graph, scaler.Transform(doc.local), k);
}

std::vector<Selection> Select(std::span<const surface::Spot> spots,
                              std::span<const double> scores, double threshold) {
  std::vector<Selection> out;
  size_t v = 0;
  for (size_t s = 0; s < spots.size(); ++s) {
    std::optional<Selection> best;
    for (ItemId id : spots[s].candidates) {
      if (v >= scores.size()) throw InvalidArgument("fewer scores than vertices");
      const double score = scores[v++];
      if (!(score > threshold)) continue;
      if (!best || score > best->score ||
          (score == best->score && id < best->item)) {
        best = Selection{s, id, score};
      }
    }
    if (best) out.push_back(*best);
  }
  if (v != scores.size()) throw InvalidArgument("more scores than vertices");
  return out;
}

Annotator::Annotator(Resources resources, LinearModel model)
    : resources_(resources), model_(std::move(model)) {
  CheckResources(resources_);
}

std::vector<Annotation> Annotator::Annotate(std::string_view text) const {
  PreparedDocument doc = PrepareDocument(text, resources_, model_.config.similarity);
  if (doc.spots.empty()) return {};
  const std::vector<double> scores =
      model_.Score(StackFeatures(doc, model_.scaler, model_.config.k));

  std::vector<Annotation> out;
  for (const Selection &sel : Select(doc.spots, scores, model_.config.threshold)) {
    Annotation a;
    a.spot = doc.spots[sel.spot];
    a.item = sel.item;
    a.score = sel.score;
    for (size_t v = 0; v < doc.graph.size(); ++v) {
      if (doc.graph.vertices[v].spot == sel.spot) {
        a.candidates.push_back({doc.graph.vertices[v].item, scores[v]});
      }
    }
    std::stable_sort(a.candidates.begin(), a.candidates.end(),
                     [](const CandidateScore &x, const CandidateScore &y) {
                       return x.score > y.score;
                     });
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<eval::Prediction> Annotator::Predict(std::string_view text) const {
  std::vector<eval::Prediction> out;
  for (const auto &a : Annotate(text)) out.push_back({a.spot.start, a.spot.end, a.item});
  return out;
}

LinearModel Train(std::span<const eval::GoldDocument> dataset,
                  const Resources &resources, const TrainConfig &config,
                  TrainReport *report) {
  if (config.k < 0) throw InvalidArgument("k must be non-negative");
  TrainReport local_report;
  TrainReport &rep = report ? *report : local_report;
  rep = TrainReport{};
  rep.documents = dataset.size();

  std::vector<PreparedDocument> docs;
  std::vector<std::vector<int>> labels;
  docs.reserve(dataset.size());
  FeatureMatrix all_local(0, kNumLocalFeatures);
  for (const auto &gold : dataset) {
    PreparedDocument doc = PrepareDocument(gold.text, resources, config.similarity);
    const auto targets = SpotTargets(doc, gold, rep);
    std::vector<int> y(doc.graph.size());
    for (size_t v = 0; v < doc.graph.size(); ++v) {
      const auto &vertex = doc.graph.vertices[v];
      const auto &target = targets[vertex.spot];
      y[v] = (target && *target == vertex.item) ? 1 : -1;
      rep.positives += y[v] > 0;
    }
    for (size_t r = 0; r < doc.local.rows(); ++r) all_local.AppendRow(doc.local.row(r));
    docs.push_back(std::move(doc));
    labels.push_back(std::move(y));
  }
  if (all_local.rows() == 0) throw InvalidArgument("degenerate labels");

  LinearModel model;
  model.config = config;
  model.scaler = Scaler::Fit(all_local);

  const size_t width = static_cast<size_t>(config.k + 1) * kNumLocalFeatures;
  FeatureMatrix x(0, width);
  std::vector<int> y;
  for (size_t d = 0; d < docs.size(); ++d) {
    if (docs[d].graph.size() == 0) continue;
    FeatureMatrix stacked = StackFeatures(docs[d], model.scaler, config.k);
    for (size_t r = 0; r < stacked.rows(); ++r) x.AppendRow(stacked.row(r));
    y.insert(y.end(), labels[d].begin(), labels[d].end());
  }
  rep.rows = x.rows();

  SvmSolution svm = TrainLinearSvm(x, y, config.lambda, config.epochs, config.seed);
  model.weights = std::move(svm.weights);
  model.bias = svm.bias;
  return model;
}

GridSearchResult GridSearch(std::span<const eval::GoldDocument> dataset,
                            const Resources &resources, const TrainConfig &base,
                            const HyperGrid &grid, int folds) {
  if (folds < 2) throw InvalidArgument("cross-validation needs at least two folds");
  if (dataset.size() < static_cast<size_t>(folds)) {
    throw InvalidArgument("fewer documents than folds");
  }
  GridSearchResult result;
  double best_f1 = -1.0;
  for (int k : grid.k) {
    for (double beta : grid.beta) {
      for (double eta : grid.eta) {
        for (uint32_t distance : grid.max_distance) {
          for (double lambda : grid.lambda) {
            TrainConfig config = base;
            config.k = k;
            config.similarity.beta = beta;
            config.similarity.eta = eta;
            config.similarity.max_distance = distance;
            config.lambda = lambda;

            std::vector<eval::Counts> counts(dataset.size());
            for (int fold = 0; fold < folds; ++fold) {
              std::vector<eval::GoldDocument> train;
              for (size_t i = 0; i < dataset.size(); ++i) {
                if (static_cast<int>(i % folds) != fold) train.push_back(dataset[i]);
              }
              Annotator annotator(resources, Train(train, resources, config));
              for (size_t i = fold; i < dataset.size(); i += folds) {
                auto predictions = annotator.Predict(dataset[i].text);
                counts[i] = eval::CountMatches(predictions, dataset[i].gold);
              }
            }
            const double f1 = eval::Summarize(std::move(counts)).micro_f1;
            result.points.push_back({config, f1});
            if (f1 > best_f1) {
              best_f1 = f1;
              result.best = config;
            }
          }
        }
      }
    }
  }
  return result;
}

}  // namespace kblink::classify
