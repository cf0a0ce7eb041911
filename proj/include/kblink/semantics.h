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

// Entity relatedness and the per-document mention graph.

#ifndef KBLINK_SEMANTICS_H_
#define KBLINK_SEMANTICS_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kblink/item.h"
#include "kblink/matrix.h"
#include "kblink/record_store.h"
#include "kblink/surface_dictionary.h"

namespace kblink::semantics {

struct SimilarityParams {
  double beta = 0.85;       // stay probability of the one-step walk
  double eta = 0.1;         // additive smoothing of edge weights
  uint32_t max_distance = 200;  // characters between mentions

  // Throws InvalidArgument when out of range.
  void Validate() const;

  bool operator==(const SimilarityParams &) const = default;
};

// Probability that two independent one-step walks, started at |e| and |f|,
// land on the same item. A walk stays put with probability |beta| and
// otherwise moves to a uniformly chosen out-link; an item without out-links
// always stays. Link sets must be sorted.
double Similarity(const ItemIdSet &e_links, ItemId e, const ItemIdSet &f_links,
                  ItemId f, double beta);

// Link-overlap relatedness of Milne and Witten over a KB of |kb_size| items,
// clamped at 0. Zero when either set is empty.
double MilneWitten(const ItemIdSet &a, const ItemIdSet &b, uint64_t kb_size);

struct Vertex {
  size_t spot;   // index into the document's spot list
  ItemId item;   // candidate for that spot

  bool operator==(const Vertex &) const = default;
};

// Weighted graph over (spot, candidate) vertices. |transition| is the
// column-normalized weight matrix; vertices without edges get a self-loop.
struct MentionGraph {
  std::vector<Vertex> vertices;
  SparseMatrix edge_weights;
  SparseMatrix transition;

  size_t size() const { return vertices.size(); }
};

// Vertices for every (spot, candidate) pair in document order.
std::vector<Vertex> EnumerateVertices(std::span<const surface::Spot> spots);

// Number of characters strictly between two spots; 0 when they touch or
// overlap. |document| is used to count code points; pass an empty view to
// count bytes instead.
size_t SpotGap(const surface::Spot &a, const surface::Spot &b,
               std::string_view document = {});

// Builds the mention graph of a document. Candidates without a record are
// treated as having no out-links.
MentionGraph BuildMentionGraph(std::span<const surface::Spot> spots,
                               const kb::RecordLookup &records,
                               const SimilarityParams &params,
                               std::string_view document = {});

// Horizontal stack (F, M F, M^2 F, ..., M^k F).
FeatureMatrix Propagate(const MentionGraph &graph, const FeatureMatrix &features,
                        int k);

// (alpha I + (1 - alpha) M)^k applied to a score vector.
std::vector<double> HanPropagate(const MentionGraph &graph,
                                 std::span<const double> local_scores,
                                 double alpha, int k);

}  // namespace kblink::semantics

#endif  // KBLINK_SEMANTICS_H_
