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

#ifndef KBLINK_PAGERANK_H_
#define KBLINK_PAGERANK_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kblink/item.h"

namespace kblink::graph {

inline constexpr uint32_t kPageRankFormatVersion = 1;

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;  // on the L1 change between iterations
  int max_iterations = 100;
};

class PageRankVector;

// Directed item graph assembled from out-links. Links to items that were
// never added as nodes are dropped when the graph is finalized.
class LinkGraph {
 public:
  void AddNode(ItemId id, const ItemIdSet &out_links);
  size_t size() const { return nodes_.size(); }

 private:
  friend PageRankVector ComputePageRank(const LinkGraph &,
                                        const PageRankOptions &);
  std::vector<std::pair<ItemId, ItemIdSet>> nodes_;
};

// Stationary distribution of the random surfer over the item graph.
class PageRankVector {
 public:
  PageRankVector() = default;

  // Score of |id|; items absent from the graph get the smallest positive
  // score observed, so the result is always > 0 and log-safe.
  double Lookup(ItemId id) const;
  double floor() const { return floor_; }

  const std::vector<ItemId> &ids() const { return ids_; }
  const std::vector<double> &scores() const { return scores_; }
  double damping() const { return damping_; }
  int iterations_run() const { return iterations_; }
  double residual() const { return residual_; }

  // Generation of the record store the graph was read from.
  uint64_t source_generation() const { return generation_; }
  void set_source_generation(uint64_t g) { generation_ = g; }

  void Save(const std::string &path) const;
  static PageRankVector Load(const std::string &path);

 private:
  friend PageRankVector ComputePageRank(const LinkGraph &,
                                        const PageRankOptions &);
  void ComputeFloor();

  std::vector<ItemId> ids_;  // ascending
  std::vector<double> scores_;
  double damping_ = 0.85;
  int iterations_ = 0;
  double residual_ = 0.0;
  double floor_ = 0.0;
  uint64_t generation_ = 0;
};

// Power iteration on the column-stochastic transition built from out-links.
// Dangling nodes spread their mass uniformly. Throws InvalidArgument for an
// empty graph or out-of-range parameters.
PageRankVector ComputePageRank(const LinkGraph &graph,
                               const PageRankOptions &options = {});

PageRankVector ComputePageRank(std::span<const ItemRecord> records,
                               const PageRankOptions &options = {});

}  // namespace kblink::graph

#endif  // KBLINK_PAGERANK_H_
