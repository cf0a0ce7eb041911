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

#include <cmath>
#include <random>

#include "doctest.h"
#include "kblink/annotator.h"
#include "kblink/error.h"
#include "kblink/features.h"
#include "kblink/linear_model.h"
#include "support/fixtures.h"

using namespace kblink;
using namespace kblink::classify;
using namespace kblink::testing;

namespace {

FeatureMatrix Rows(std::initializer_list<std::initializer_list<double>> rows) {
  FeatureMatrix m;
  for (const auto &row : rows) {
    std::vector<double> values(row);
    if (m.rows() == 0) m = FeatureMatrix(0, values.size());
    m.AppendRow(values);
  }
  return m;
}

surface::Spot SpotWith(const std::string &phrase, ItemIdSet candidates) {
  surface::Spot s;
  s.end = phrase.size();
  s.phrase = phrase;
  s.candidates = std::move(candidates);
  return s;
}

// Two Gaussian-free clusters separated by the line x0 + x1 = 1.
void ToySet(FeatureMatrix &x, std::vector<int> &y) {
  std::mt19937_64 rng(12);
  x = FeatureMatrix(0, 2);
  y.clear();
  for (int i = 0; i < 20; ++i) {
    double a = (rng() % 1000) / 1000.0 * 0.4;
    double b = (rng() % 1000) / 1000.0 * 0.4;
    int label = i % 2 == 0 ? 1 : -1;
    if (label > 0) {
      a += 0.6;
      b += 0.6;
    }
    x.AppendRow(std::vector<double>{a, b});
    y.push_back(label);
  }
}

std::vector<double> Decision(const SvmSolution &s, const FeatureMatrix &x) {
  std::vector<double> out;
  for (size_t r = 0; r < x.rows(); ++r) {
    double v = s.bias;
    for (size_t c = 0; c < x.cols(); ++c) v += s.weights[c] * x.at(r, c);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("local features") {
  auto lm = lm::TrainLm({"a b", "b"});
  auto kb = FigureKb();
  auto pr = graph::ComputePageRank(std::span<const ItemRecord>(kb));
  ItemRecord bare;
  bare.id = ItemId(61);
  auto spot = SpotWith("b", {ItemId(61)});
  LocalFeatures f = ComputeLocalFeatures(spot, ItemId(61), lm, pr, &bare);
  CHECK(f.bias == 1.0);
  CHECK(f.n_statements == 0.0);
  CHECK(f.n_sitelinks == 0.0);
  // count 2 of 3 tokens, 2 types plus the unseen class
  CHECK(f.neg_log_phrase_prob == doctest::Approx(-std::log((2.0 + 1.0) / (3.0 + 3.0))).epsilon(1e-14));
  CHECK(f.log_popularity == doctest::Approx(std::log(pr.Lookup(ItemId(61)))).epsilon(1e-14));

  LocalFeatures g = ComputeLocalFeatures(spot, ItemId(40469), lm, pr, &kb[0]);
  CHECK(g.n_statements == kb[0].n_statements);
  CHECK(g.n_sitelinks == 40.0);
  auto arr = g.ToArray();
  CHECK(arr[kBias] == 1.0);
  CHECK(arr[kSitelinks] == 40.0);

  LocalFeatures missing = ComputeLocalFeatures(spot, ItemId(777), lm, pr, nullptr);
  CHECK(std::isfinite(missing.log_popularity));
  CHECK(missing.n_statements == 0.0);
}

TEST_CASE("scaler") {
  auto s = Scaler::Fit(Rows({{0, 7}, {10, 7}, {5, 7}}));
  CHECK(s.Scale(0, 0) == 0.0);
  CHECK(s.Scale(0, 10) == 1.0);
  CHECK(s.Scale(0, 12) == 1.0);
  CHECK(s.Scale(0, -3) == 0.0);
  CHECK(s.Scale(1, 7) == 0.5);
  CHECK(s.Scale(1, 100) == 0.5);
  auto t = s.Transform(Rows({{5, 7}}));
  CHECK(t.at(0, 0) == 0.5);
  CHECK_THROWS_AS(Scaler::Fit(FeatureMatrix(0, 3)), InvalidArgument);
}

TEST_CASE("separable toy set is learned exactly") {
  FeatureMatrix x;
  std::vector<int> y;
  ToySet(x, y);
  auto svm = TrainLinearSvm(x, y, 1e-3, 200, 1);
  auto d = Decision(svm, x);
  for (size_t i = 0; i < y.size(); ++i) CHECK(d[i] * y[i] > 0);

  // Duplicating rows rescales the loss only.
  FeatureMatrix x2 = x;
  std::vector<int> y2 = y;
  for (size_t r = 0; r < x.rows(); ++r) {
    x2.AppendRow(x.row(r));
    y2.push_back(y[r]);
  }
  auto d2 = Decision(TrainLinearSvm(x2, y2, 1e-3, 200, 1), x);
  for (size_t i = 0; i < y.size(); ++i) CHECK((d2[i] > 0) == (d[i] > 0));

  // Flipped labels flip every prediction.
  std::vector<int> flipped = y;
  for (int &v : flipped) v = -v;
  auto df = Decision(TrainLinearSvm(x, flipped, 1e-3, 200, 1), x);
  for (size_t i = 0; i < y.size(); ++i) CHECK((df[i] > 0) == (d[i] < 0));
}

TEST_CASE("training is reproducible and rejects one class") {
  FeatureMatrix x;
  std::vector<int> y;
  ToySet(x, y);
  auto a = TrainLinearSvm(x, y, 1e-2, 10, 9);
  auto b = TrainLinearSvm(x, y, 1e-2, 10, 9);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
  std::vector<int> ones(y.size(), 1);
  CHECK_THROWS_WITH_AS(TrainLinearSvm(x, ones, 1e-2, 10, 9), doctest::Contains("degenerate labels"),
                       InvalidArgument);
}

TEST_CASE("score") {
  LinearModel m;
  m.weights.assign(kNumLocalFeatures * 2, 0.0);
  FeatureMatrix x(3, kNumLocalFeatures * 2, 0.4);
  for (double v : m.Score(x)) CHECK(v == 0.0);

  m.weights[kBias] = 1.0;
  for (size_t r = 0; r < 3; ++r) x.at(r, kBias) = 0.5;  // a constant column scales to 0.5
  for (double v : m.Score(x)) CHECK(v == 0.5);
  m.weights[kBias] = 0.0;

  LinearModel h;
  h.weights = {0.5, -2.0, 1.0};
  h.bias = 0.25;
  auto s = h.Score(Rows({{1, 2, 3}, {0.5, 0, -1}}));
  CHECK(s[0] == doctest::Approx(0.5 - 4 + 3 + 0.25).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(0.25 - 1 + 0.25).epsilon(1e-15));

  // Linear in the rows when bias is 0.
  h.bias = 0.0;
  auto X = Rows({{1, 2, 3}, {0.5, 0, -1}});
  auto Y = Rows({{0, 1, 0}, {2, 2, 2}});
  FeatureMatrix combo = X;
  for (size_t i = 0; i < 6; ++i) combo.at(i / 3, i % 3) = 2 * X.at(i / 3, i % 3) - 3 * Y.at(i / 3, i % 3);
  auto sx = h.Score(X), sy = h.Score(Y), sc = h.Score(combo);
  for (int r = 0; r < 2; ++r) CHECK(sc[r] == doctest::Approx(2 * sx[r] - 3 * sy[r]).epsilon(1e-14));

  CHECK_THROWS_AS(h.Score(FeatureMatrix(1, 4)), InvalidArgument);
}

TEST_CASE("select") {
  std::vector<surface::Spot> spots = {SpotWith("A", {ItemId(1), ItemId(2)}),
                                      SpotWith("B", {ItemId(3)})};
  CHECK(Select(spots, std::vector<double>{-1, -0.5, -2}).empty());

  auto one = Select(spots, std::vector<double>{-1, -0.5, 0.2});
  REQUIRE(one.size() == 1);
  CHECK(one[0].spot == 1);
  CHECK(one[0].item == ItemId(3));

  auto tie = Select(spots, std::vector<double>{0.5, 0.5, -1});
  REQUIRE(tie.size() == 1);
  CHECK(tie[0].item == ItemId(1));

  auto best = Select(spots, std::vector<double>{0.1, 0.3, 0.0});
  REQUIRE(best.size() == 1);
  CHECK(best[0].item == ItemId(2));

  // Adding a constant to one spot's candidates keeps the winner.
  auto shifted = Select(spots, std::vector<double>{0.1 + 5, 0.3 + 5, 0.0});
  CHECK(shifted[0].item == ItemId(2));

  CHECK(Select(spots, std::vector<double>{0.1, 0.3, 0.4}, 0.35).size() == 1);
}

TEST_CASE("model serialization round-trips") {
  TempDir dir;
  LinearModel m;
  m.weights = {0.1, -0.2, 0.3, 0.4, 0.5};
  m.bias = -0.75;
  m.scaler = Scaler({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {1, 1}});
  m.config.k = 0;
  m.config.similarity.beta = 0.5;
  m.Save(dir.file("model.bin"));
  auto loaded = LinearModel::Load(dir.file("model.bin"));
  CHECK(loaded.weights == m.weights);
  CHECK(loaded.bias == m.bias);
  CHECK(loaded.scaler == m.scaler);
  CHECK(loaded.config == m.config);
  CHECK(loaded.Serialize() == m.Serialize());
  WriteText(dir.file("bad.bin"), "KBLMODEL");
  CHECK_THROWS_AS(LinearModel::Load(dir.file("bad.bin")), FormatError);
}

TEST_CASE("annotating text without matches") {
  auto kit = BuildToolkit(FigureKb());
  LinearModel m;
  m.weights.assign((m.config.k + 1) * kNumLocalFeatures, 1.0);
  m.scaler = Scaler(std::vector<std::pair<double, double>>(kNumLocalFeatures, {0, 1}));
  Annotator annotator(kit->resources(), m);
  CHECK(annotator.Annotate("nothing to see here").empty());
  CHECK(annotator.Annotate("").empty());
}

TEST_CASE("training labels and degenerate data") {
  auto kit = BuildToolkit(FigureKb());
  auto corpus = FigureCorpus();
  TrainReport report;
  Train(corpus, kit->resources(), {}, &report);
  CHECK(report.documents == corpus.size());
  CHECK(report.rows == 13);
  CHECK(report.positives == 9);
  CHECK(report.gold_in_kb == 9);
  CHECK(report.unreachable == 0);

  std::vector<eval::GoldDocument> positives_only(corpus.begin(), corpus.begin() + 3);
  CHECK_THROWS_WITH_AS(Train(positives_only, kit->resources(), {}),
                       doctest::Contains("degenerate labels"), InvalidArgument);

  eval::GoldDocument unreachable{"Someone else entirely.", {{0, 7, ItemId(40469)}}};
  corpus.push_back(unreachable);
  Train(corpus, kit->resources(), {}, &report);
  CHECK(report.unreachable == 1);
}

TEST_CASE("the news sentence is linked end to end") {
  auto kit = BuildToolkit(FigureKb());
  TrainConfig config;
  config.k = 1;
  config.lambda = 1e-3;
  config.epochs = 100;
  LinearModel model = Train(FigureCorpus(), kit->resources(), config);
  CHECK(model.weights.size() == 2 * kNumLocalFeatures);

  Annotator annotator(kit->resources(), model);
  auto annotations = annotator.Annotate(kFigureSentence);
  REQUIRE(annotations.size() == 3);
  CHECK(annotations[0].item == ItemId(40469));
  CHECK(annotations[1].item == ItemId(20000));
  CHECK(annotations[2].item == ItemId(61));
  CHECK(annotations[0].spot.phrase == "Associated Press");
  for (const auto &a : annotations) {
    CHECK(a.score > 0.0);
    REQUIRE(!a.candidates.empty());
    CHECK(a.candidates[0].item == a.item);
  }

  auto again = annotator.Annotate(kFigureSentence);
  REQUIRE(again.size() == annotations.size());
  for (size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].score == annotations[i].score);
    CHECK(again[i].item == annotations[i].item);
  }
  CHECK(Train(FigureCorpus(), kit->resources(), config).Serialize() == model.Serialize());

  auto predictions = annotator.Predict(kFigureSentence);
  REQUIRE(predictions.size() == 3);
  CHECK(predictions[1].start == 24);
  CHECK(predictions[1].end == 34);
}

TEST_CASE("one annotation per spot at most") {
  ItemRecord a = MakeItem(1, "Curry", {3});
  ItemRecord b = MakeItem(2, "Curry", {});
  ItemRecord c = MakeItem(3, "Golden State", {1});
  auto kit = BuildToolkit({a, b, c});
  LinearModel m;
  m.config.k = 1;
  m.weights.assign(2 * kNumLocalFeatures, 0.5);
  m.bias = 0.1;
  m.scaler = Scaler(std::vector<std::pair<double, double>>(kNumLocalFeatures, {0, 10}));
  Annotator annotator(kit->resources(), m);
  std::string text = "Curry scored for Golden State.";
  auto spots = kit->dictionary.FindSpots(text);
  auto annotations = annotator.Annotate(text);
  CHECK(annotations.size() <= spots.size());
  for (size_t i = 0; i < annotations.size(); ++i) {
    bool found = false;
    for (const auto &s : spots) found |= s == annotations[i].spot;
    CHECK(found);
    if (i > 0) CHECK(annotations[i - 1].spot.start < annotations[i].spot.start);
  }
}

}  // TEST_SUITE
