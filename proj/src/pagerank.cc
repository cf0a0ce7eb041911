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

#include "kblink/pagerank.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kblink/binary_io.h"
#include "kblink/error.h"

namespace kblink::graph {

namespace {
constexpr const char *kMagic = "KBLPRANK";
}

void LinkGraph::AddNode(ItemId id, const ItemIdSet &out_links) {
  nodes_.emplace_back(id, out_links);
}

PageRankVector ComputePageRank(const LinkGraph &graph,
                               const PageRankOptions &options) {
  if (graph.nodes_.empty()) throw InvalidArgument("no nodes");
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw InvalidArgument("damping must lie in (0, 1)");
  }
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");

  PageRankVector pr;
  pr.damping_ = options.damping;

  // Dense indices follow ascending id order.
  std::vector<size_t> order(graph.nodes_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return graph.nodes_[a].first < graph.nodes_[b].first;
  });
  pr.ids_.reserve(order.size());
  for (size_t i : order) {
    ItemId id = graph.nodes_[i].first;
    if (!pr.ids_.empty() && pr.ids_.back() == id) {
      throw InvalidArgument("duplicate node " + id.str());
    }
    pr.ids_.push_back(id);
  }
  const size_t n = pr.ids_.size();
  auto index_of = [&](ItemId id) -> int64_t {
    auto it = std::lower_bound(pr.ids_.begin(), pr.ids_.end(), id);
    if (it == pr.ids_.end() || *it != id) return -1;
    return it - pr.ids_.begin();
  };

  // Incoming adjacency in CSR form so each iteration is a pull.
  std::vector<uint32_t> out_degree(n, 0);
  std::vector<std::pair<uint32_t, uint32_t>> edges;  // (target, source)
  for (size_t src = 0; src < n; ++src) {
    const ItemIdSet &links = graph.nodes_[order[src]].second;
    int64_t prev = -1;
    ItemIdSet sorted = links;
    Normalize(sorted);
    for (ItemId target : sorted) {
      int64_t t = index_of(target);
      if (t < 0 || t == prev) continue;
      prev = t;
      edges.emplace_back(static_cast<uint32_t>(t), static_cast<uint32_t>(src));
      ++out_degree[src];
    }
  }
  std::sort(edges.begin(), edges.end());
  std::vector<size_t> in_start(n + 1, 0);
  for (const auto &e : edges) ++in_start[e.first + 1];
  for (size_t i = 0; i < n; ++i) in_start[i + 1] += in_start[i];

  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n), next(n), share(n);
  double residual = 0.0;
  int iter = 0;
  while (iter < options.max_iterations) {
    double dangling = 0.0;
    for (size_t u = 0; u < n; ++u) {
      if (out_degree[u] == 0) {
        dangling += rank[u];
        share[u] = 0.0;
      } else {
        share[u] = rank[u] / out_degree[u];
      }
    }
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    residual = 0.0;
    for (size_t v = 0; v < n; ++v) {
      double sum = 0.0;
      for (size_t e = in_start[v]; e < in_start[v + 1]; ++e) {
        sum += share[edges[e].second];
      }
      next[v] = base + d * sum;
      residual += std::fabs(next[v] - rank[v]);
    }
    rank.swap(next);
    ++iter;
    if (residual < options.tolerance) break;
  }

  pr.scores_ = std::move(rank);
  pr.iterations_ = iter;
  pr.residual_ = residual;
  pr.ComputeFloor();
  return pr;
}

PageRankVector ComputePageRank(std::span<const ItemRecord> records,
                               const PageRankOptions &options) {
  LinkGraph graph;
  for (const auto &rec : records) graph.AddNode(rec.id, rec.out_links);
  return ComputePageRank(graph, options);
}

void PageRankVector::ComputeFloor() {
  floor_ = std::numeric_limits<double>::max();
  for (double s : scores_) {
    if (s > 0.0) floor_ = std::min(floor_, s);
  }
  if (floor_ == std::numeric_limits<double>::max()) {
    floor_ = std::numeric_limits<double>::min();
  }
}

double PageRankVector::Lookup(ItemId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return floor_;
  double s = scores_[it - ids_.begin()];
  return s > 0.0 ? s : floor_;
}

void PageRankVector::Save(const std::string &path) const {
  auto out = OpenForWrite(path);
  BinaryWriter w(out);
  w.Header(kMagic, kPageRankFormatVersion);
  w.U64(generation_);
  w.F64(damping_);
  w.U32(static_cast<uint32_t>(iterations_));
  w.F64(residual_);
  w.U64(ids_.size());
  for (size_t i = 0; i < ids_.size(); ++i) {
    w.U64(ids_[i].value());
    w.F64(scores_[i]);
  }
}

PageRankVector PageRankVector::Load(const std::string &path) {
  auto in = OpenForRead(path);
  BinaryReader r(in, path);
  r.Header(kMagic, kPageRankFormatVersion);
  PageRankVector pr;
  pr.generation_ = r.U64();
  pr.damping_ = r.F64();
  pr.iterations_ = static_cast<int>(r.U32());
  pr.residual_ = r.F64();
  uint64_t n = r.U64();
  pr.ids_.reserve(n);
  pr.scores_.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    pr.ids_.push_back(ItemId(r.U64()));
    pr.scores_.push_back(r.F64());
  }
  if (!std::is_sorted(pr.ids_.begin(), pr.ids_.end())) {
    throw FormatError(path + ": ids out of order");
  }
  pr.ComputeFloor();
  return pr;
}

}  // namespace kblink::graph
