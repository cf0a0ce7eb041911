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

#ifndef KBLINK_SURFACE_DICTIONARY_H_
#define KBLINK_SURFACE_DICTIONARY_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kblink/item.h"

namespace kblink::surface {

inline constexpr uint32_t kDictionaryFormatVersion = 1;

// A matched span of a document together with every item it may refer to.
struct Spot {
  size_t start = 0;  // byte offsets, end exclusive
  size_t end = 0;
  std::string phrase;
  ItemIdSet candidates;

  bool operator==(const Spot &) const = default;
};

// Immutable case-sensitive map from surface phrases to candidate items,
// compiled into a byte-level deterministic automaton for scanning.
class SurfaceDictionary {
 public:
  class Builder {
   public:
    // Whitespace around |phrase| is trimmed. Phrases without any token
    // (empty or punctuation only) are ignored.
    void Add(std::string_view phrase, ItemId id);
    SurfaceDictionary Build() &&;

   private:
    std::map<std::string, ItemIdSet> entries_;
  };

  SurfaceDictionary() = default;

  // Exact lookup. Returns nullptr when the phrase is not a key.
  const ItemIdSet *Lookup(std::string_view phrase) const;

  // Leftmost-longest, non-overlapping matches that start and end on token
  // boundaries, in document order.
  std::vector<Spot> FindSpots(std::string_view document) const;

  size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const std::vector<std::string> &keys() const { return keys_; }
  const ItemIdSet &postings(size_t key) const { return postings_[key]; }

  uint64_t source_generation() const { return generation_; }
  void set_source_generation(uint64_t g) { generation_ = g; }

  void Save(const std::string &path) const;
  static SurfaceDictionary Load(const std::string &path);

 private:
  static constexpr uint32_t kNoKey = UINT32_MAX;

  struct Node {
    uint32_t first_edge = 0;
    uint32_t num_edges = 0;
    uint32_t key = kNoKey;  // accepted key index
  };

  SurfaceDictionary(std::vector<std::string> keys,
                    std::vector<ItemIdSet> postings);
  void Compile();
  // Target node for byte |c| out of |node|, or 0 (the root never recurs).
  uint32_t Step(uint32_t node, unsigned char c) const;

  std::vector<std::string> keys_;  // sorted
  std::vector<ItemIdSet> postings_;
  std::vector<Node> nodes_;
  std::vector<unsigned char> edge_labels_;
  std::vector<uint32_t> edge_targets_;
  uint64_t generation_ = 0;
};

// Adds every label and alias in |languages| (all languages when empty).
SurfaceDictionary BuildDictionary(std::span<const ItemRecord> records,
                                  const std::vector<std::string> &languages);

void AddRecord(SurfaceDictionary::Builder &builder, const ItemRecord &rec,
               const std::vector<std::string> &languages);

}  // namespace kblink::surface

#endif  // KBLINK_SURFACE_DICTIONARY_H_
