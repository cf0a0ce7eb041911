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

#include "kblink/semantics.h"

#include <algorithm>
#include <cmath>

#include "kblink/error.h"

namespace kblink::semantics {

namespace {

size_t IntersectionSize(const ItemIdSet &a, const ItemIdSet &b) {
  size_t n = 0;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

bool IsContinuationByte(char c) {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

// prefix[i] = number of code points starting in [0, i).
std::vector<size_t> CodePointPrefix(std::string_view text) {
  std::vector<size_t> prefix(text.size() + 1, 0);
  for (size_t i = 0; i < text.size(); ++i) {
    prefix[i + 1] = prefix[i] + (IsContinuationByte(text[i]) ? 0 : 1);
  }
  return prefix;
}

const ItemIdSet &LinksOf(const kb::RecordLookup &records, ItemId id) {
  static const ItemIdSet kNone;
  const ItemRecord *rec = records.Find(id);
  return rec ? rec->out_links : kNone;
}

}  // namespace

void SimilarityParams::Validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in [0, 1]");
  if (!(eta >= 0.0)) throw InvalidArgument("eta must be non-negative");
  if (max_distance == 0) throw InvalidArgument("max distance must be positive");
}

double Similarity(const ItemIdSet &e_links, ItemId e, const ItemIdSet &f_links,
                  ItemId f, double beta) {
  const double stay_e = e_links.empty() ? 1.0 : beta;
  const double stay_f = f_links.empty() ? 1.0 : beta;
  const double move_e = 1.0 - stay_e;
  const double move_f = 1.0 - stay_f;

  double s = 0.0;
  if (e == f) s += stay_e * stay_f;
  if (move_f > 0.0 && Contains(f_links, e)) {
    s += stay_e * move_f / static_cast<double>(f_links.size());
  }
  if (move_e > 0.0 && Contains(e_links, f)) {
    s += stay_f * move_e / static_cast<double>(e_links.size());
  }
  if (move_e > 0.0 && move_f > 0.0) {
    const double common = static_cast<double>(IntersectionSize(e_links, f_links));
    s += move_e * move_f * common /
         (static_cast<double>(e_links.size()) * static_cast<double>(f_links.size()));
  }
  return std::clamp(s, 0.0, 1.0);
}

double MilneWitten(const ItemIdSet &a, const ItemIdSet &b, uint64_t kb_size) {
  if (a.empty() || b.empty()) return 0.0;
  const size_t common = IntersectionSize(a, b);
  if (common == 0) return 0.0;
  const double larger = std::log(static_cast<double>(std::max(a.size(), b.size())));
  const double smaller = std::log(static_cast<double>(std::min(a.size(), b.size())));
  const double denom = std::log(static_cast<double>(kb_size)) - smaller;
  const double numer = larger - std::log(static_cast<double>(common));
  if (denom <= 0.0) return numer <= 0.0 ? 1.0 : 0.0;
  return std::clamp(1.0 - numer / denom, 0.0, 1.0);
}

std::vector<Vertex> EnumerateVertices(std::span<const surface::Spot> spots) {
  std::vector<Vertex> vertices;
  for (size_t s = 0; s < spots.size(); ++s) {
    for (ItemId id : spots[s].candidates) vertices.push_back({s, id});
  }
  return vertices;
}

size_t SpotGap(const surface::Spot &a, const surface::Spot &b,
               std::string_view document) {
  const size_t left_end = std::min(a.end, b.end);
  const size_t right_start = std::max(a.start, b.start);
  if (right_start <= left_end) return 0;
  if (document.empty()) return right_start - left_end;
  size_t n = 0;
  for (size_t i = left_end; i < right_start && i < document.size(); ++i) {
    if (!IsContinuationByte(document[i])) ++n;
  }
  return n;
}

MentionGraph BuildMentionGraph(std::span<const surface::Spot> spots,
                               const kb::RecordLookup &records,
                               const SimilarityParams &params,
                               std::string_view document) {
  params.Validate();
  MentionGraph graph;
  graph.vertices = EnumerateVertices(spots);
  const size_t n = graph.vertices.size();

  // First vertex of each spot.
  std::vector<size_t> first(spots.size() + 1, 0);
  for (size_t s = 0; s < spots.size(); ++s) {
    first[s + 1] = first[s] + spots[s].candidates.size();
  }

  std::vector<size_t> prefix;
  if (!document.empty()) prefix = CodePointPrefix(document);
  auto gap = [&](const surface::Spot &a, const surface::Spot &b) -> size_t {
    if (prefix.empty()) return SpotGap(a, b);
    const size_t left_end = std::min(a.end, b.end);
    const size_t right_start = std::max(a.start, b.start);
    if (right_start <= left_end) return 0;
    return prefix[std::min(right_start, document.size())] -
           prefix[std::min(left_end, document.size())];
  };

  const double max_d = static_cast<double>(params.max_distance);
  std::vector<SparseMatrix::Triplet> weights;
  for (size_t s = 0; s < spots.size(); ++s) {
    for (size_t t = s + 1; t < spots.size(); ++t) {
      const size_t distance = gap(spots[s], spots[t]);
      // Spots are sorted, so later ones are only farther away.
      if (distance > params.max_distance) {
        if (spots[t].start >= spots[s].end) break;
        continue;
      }
      const double discount = (max_d - static_cast<double>(distance)) / max_d;
      if (discount <= 0.0) continue;
      for (size_t u = first[s]; u < first[s + 1]; ++u) {
        const ItemId e = graph.vertices[u].item;
        const ItemIdSet &e_links = LinksOf(records, e);
        for (size_t v = first[t]; v < first[t + 1]; ++v) {
          const ItemId f = graph.vertices[v].item;
          const double w =
              (params.eta + Similarity(e_links, e, LinksOf(records, f), f,
                                       params.beta)) *
              discount;
          if (w <= 0.0) continue;
          weights.emplace_back(u, v, w);
          weights.emplace_back(v, u, w);
        }
      }
    }
  }
  graph.edge_weights = SparseMatrix(n, n, weights);

  std::vector<double> column_sum(n, 0.0);
  for (size_t c = 0; c < n; ++c) column_sum[c] = graph.edge_weights.ColumnSum(c);
  std::vector<SparseMatrix::Triplet> transition;
  transition.reserve(weights.size() + n);
  for (const auto &[r, c, w] : weights) {
    transition.emplace_back(r, c, w / column_sum[c]);
  }
  for (size_t c = 0; c < n; ++c) {
    if (column_sum[c] <= 0.0) transition.emplace_back(c, c, 1.0);
  }
  graph.transition = SparseMatrix(n, n, std::move(transition));
  return graph;
}

FeatureMatrix Propagate(const MentionGraph &graph, const FeatureMatrix &features,
                        int k) {
  if (k < 0) throw InvalidArgument("propagation depth must be non-negative");
  if (features.rows() != graph.size()) {
    throw InvalidArgument("feature rows do not match graph vertices");
  }
  const size_t width = features.cols();
  FeatureMatrix out(features.rows(), width * static_cast<size_t>(k + 1));
  FeatureMatrix block = features;
  for (int step = 0; step <= k; ++step) {
    if (step > 0) block = graph.transition.Multiply(block);
    for (size_t r = 0; r < block.rows(); ++r) {
      auto src = block.row(r);
      std::copy(src.begin(), src.end(), out.row(r).begin() + step * width);
    }
  }
  return out;
}

std::vector<double> HanPropagate(const MentionGraph &graph,
                                 std::span<const double> local_scores,
                                 double alpha, int k) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  if (k < 0) throw InvalidArgument("propagation depth must be non-negative");
  if (local_scores.size() != graph.size()) {
    throw InvalidArgument("score vector does not match graph vertices");
  }
  std::vector<double> x(local_scores.begin(), local_scores.end());
  for (int step = 0; step < k; ++step) {
    std::vector<double> mx = graph.transition.Multiply(x);
    for (size_t i = 0; i < x.size(); ++i) x[i] = alpha * x[i] + (1.0 - alpha) * mx[i];
  }
  return x;
}

}  // namespace kblink::semantics
