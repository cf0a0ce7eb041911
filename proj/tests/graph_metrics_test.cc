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

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "kblink/error.h"
#include "kblink/pagerank.h"
#include "support/fixtures.h"
#include "support/oracles.h"

using namespace kblink;
using namespace kblink::testing;
using kblink::graph::ComputePageRank;
using kblink::graph::LinkGraph;
using kblink::graph::PageRankOptions;

namespace {

double Sum(const std::vector<double> &v) { return std::accumulate(v.begin(), v.end(), 0.0); }

LinkGraph FromSets(const std::vector<std::set<int>> &out, const std::vector<uint64_t> &ids) {
  LinkGraph g;
  for (size_t i = 0; i < out.size(); ++i) {
    ItemIdSet links;
    for (int j : out[i]) links.push_back(ItemId(ids[j]));
    Normalize(links);
    g.AddNode(ItemId(ids[i]), links);
  }
  return g;
}

}  // namespace

TEST_SUITE("graph_metrics") {

TEST_CASE("two-cycle is uniform") {
  LinkGraph g;
  g.AddNode(ItemId(1), {ItemId(2)});
  g.AddNode(ItemId(2), {ItemId(1)});
  auto pr = ComputePageRank(g);
  CHECK(pr.Lookup(ItemId(1)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pr.Lookup(ItemId(2)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("single node") {
  LinkGraph g;
  g.AddNode(ItemId(1), {});
  auto pr = ComputePageRank(g);
  CHECK(pr.Lookup(ItemId(1)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("triangle with a chord matches the dense oracle") {
  // A->B, B->C, C->A, A->C
  std::vector<std::set<int>> out = {{1, 2}, {2}, {0}};
  auto expected = DensePageRank(out, 0.85);
  auto pr = ComputePageRank(FromSets(out, {1, 2, 3}));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::fabs(pr.Lookup(ItemId(i + 1)) - expected[i]) < 1e-8);
  }
  CHECK(std::fabs(Sum(pr.scores()) - 1.0) < 1e-9);
  CHECK(pr.residual() < 1e-10);
  CHECK(pr.iterations_run() <= 100);
}

TEST_CASE("absent ids get the floor") {
  std::vector<std::set<int>> out = {{1}, {2}, {}, {0, 1}};
  auto pr = ComputePageRank(FromSets(out, {10, 20, 30, 40}));
  double min_score = *std::min_element(pr.scores().begin(), pr.scores().end());
  CHECK(pr.Lookup(ItemId(99)) == min_score);
  CHECK(pr.floor() > 0.0);
  for (double s : pr.scores()) CHECK(pr.floor() <= s);
  CHECK(pr.Lookup(ItemId(20)) == pr.scores()[1]);
}

TEST_CASE("links to unknown items are dropped") {
  LinkGraph g;
  g.AddNode(ItemId(1), {ItemId(2), ItemId(77)});
  g.AddNode(ItemId(2), {ItemId(1)});
  auto pr = ComputePageRank(g);
  CHECK(pr.Lookup(ItemId(1)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("permuting ids permutes scores") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    std::vector<std::set<int>> out(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && rng() % 4 == 0) out[i].insert(j);
      }
    }
    std::vector<uint64_t> ids(n), shuffled(n);
    std::iota(ids.begin(), ids.end(), 100);
    shuffled = ids;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto a = ComputePageRank(FromSets(out, ids));
    auto b = ComputePageRank(FromSets(out, shuffled));
    for (int i = 0; i < n; ++i) {
      CHECK(std::fabs(a.Lookup(ItemId(ids[i])) - b.Lookup(ItemId(shuffled[i]))) < 1e-12);
    }
  }
}

TEST_CASE("records feed the graph") {
  auto pr = ComputePageRank(std::span<const ItemRecord>(FigureKb()));
  CHECK(pr.ids().size() == 3);
  CHECK(std::fabs(Sum(pr.scores()) - 1.0) < 1e-9);
}

TEST_CASE("invalid inputs") {
  LinkGraph empty;
  CHECK_THROWS_WITH_AS(ComputePageRank(empty), doctest::Contains("no nodes"), InvalidArgument);
  LinkGraph g;
  g.AddNode(ItemId(1), {});
  CHECK_THROWS_AS(ComputePageRank(g, {.damping = 1.0}), InvalidArgument);
  CHECK_THROWS_AS(ComputePageRank(g, {.damping = 0.0}), InvalidArgument);
  CHECK_THROWS_AS(ComputePageRank(g, {.tolerance = 0.0}), InvalidArgument);
}

TEST_CASE("save and load round-trip") {
  TempDir dir;
  std::vector<std::set<int>> out = {{1, 2}, {2}, {0}};
  auto pr = ComputePageRank(FromSets(out, {1, 2, 3}));
  pr.set_source_generation(4);
  pr.Save(dir.file("pr.bin"));
  auto loaded = graph::PageRankVector::Load(dir.file("pr.bin"));
  CHECK(loaded.scores() == pr.scores());
  CHECK(loaded.ids() == pr.ids());
  CHECK(loaded.source_generation() == 4);
  CHECK(loaded.floor() == pr.floor());
  WriteText(dir.file("bad.bin"), "KBLDICT\0garbage");
  CHECK_THROWS_AS(graph::PageRankVector::Load(dir.file("bad.bin")), FormatError);
}

}  // TEST_SUITE
