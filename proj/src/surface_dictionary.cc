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

#include "kblink/surface_dictionary.h"

#include <algorithm>

#include "kblink/binary_io.h"
#include "kblink/error.h"
#include "kblink/tokenizer.h"

namespace kblink::surface {

namespace {

constexpr const char *kMagic = "KBLDICT";

std::string_view TrimSpace(std::string_view s) {
  auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

void SurfaceDictionary::Builder::Add(std::string_view phrase, ItemId id) {
  phrase = TrimSpace(phrase);
  if (text::Tokenize(phrase).empty()) return;
  entries_[std::string(phrase)].push_back(id);
}

SurfaceDictionary SurfaceDictionary::Builder::Build() && {
  std::vector<std::string> keys;
  std::vector<ItemIdSet> postings;
  keys.reserve(entries_.size());
  postings.reserve(entries_.size());
  for (auto &[phrase, ids] : entries_) {
    Normalize(ids);
    keys.push_back(phrase);
    postings.push_back(std::move(ids));
  }
  entries_.clear();
  return SurfaceDictionary(std::move(keys), std::move(postings));
}

SurfaceDictionary::SurfaceDictionary(std::vector<std::string> keys,
                                     std::vector<ItemIdSet> postings)
    : keys_(std::move(keys)), postings_(std::move(postings)) {
  Compile();
}

void SurfaceDictionary::Compile() {
  // Keys are sorted bytewise, so children are created in increasing label
  // order and only the most recent child of a node can be extended.
  struct Temp {
    std::vector<std::pair<unsigned char, uint32_t>> children;
    uint32_t key = kNoKey;
  };
  std::vector<Temp> temp(1);
  for (uint32_t k = 0; k < keys_.size(); ++k) {
    uint32_t node = 0;
    for (char ch : keys_[k]) {
      const auto c = static_cast<unsigned char>(ch);
      auto &children = temp[node].children;
      if (!children.empty() && children.back().first == c) {
        node = children.back().second;
      } else {
        uint32_t next = static_cast<uint32_t>(temp.size());
        children.emplace_back(c, next);
        temp.emplace_back();
        node = next;
      }
    }
    temp[node].key = k;
  }

  nodes_.assign(temp.size(), Node{});
  edge_labels_.clear();
  edge_targets_.clear();
  for (size_t i = 0; i < temp.size(); ++i) {
    nodes_[i].first_edge = static_cast<uint32_t>(edge_labels_.size());
    nodes_[i].num_edges = static_cast<uint32_t>(temp[i].children.size());
    nodes_[i].key = temp[i].key;
    for (const auto &[label, target] : temp[i].children) {
      edge_labels_.push_back(label);
      edge_targets_.push_back(target);
    }
  }
}

uint32_t SurfaceDictionary::Step(uint32_t node, unsigned char c) const {
  const Node &n = nodes_[node];
  auto begin = edge_labels_.begin() + n.first_edge;
  auto end = begin + n.num_edges;
  auto it = std::lower_bound(begin, end, c);
  if (it == end || *it != c) return 0;
  return edge_targets_[n.first_edge + (it - begin)];
}

const ItemIdSet *SurfaceDictionary::Lookup(std::string_view phrase) const {
  if (nodes_.empty()) return nullptr;
  uint32_t node = 0;
  for (char ch : phrase) {
    node = Step(node, static_cast<unsigned char>(ch));
    if (node == 0) return nullptr;
  }
  if (nodes_[node].key == kNoKey) return nullptr;
  return &postings_[nodes_[node].key];
}

std::vector<Spot> SurfaceDictionary::FindSpots(std::string_view document) const {
  std::vector<Spot> spots;
  if (keys_.empty() || document.empty()) return spots;
  const std::vector<uint8_t> boundary = text::BoundaryFlags(document);

  size_t pos = 0;
  while (pos < document.size()) {
    if (!boundary[pos]) {
      ++pos;
      continue;
    }
    uint32_t node = 0;
    uint32_t best_key = kNoKey;
    size_t best_end = pos;
    for (size_t i = pos; i < document.size(); ++i) {
      node = Step(node, static_cast<unsigned char>(document[i]));
      if (node == 0) break;
      if (nodes_[node].key != kNoKey && boundary[i + 1]) {
        best_key = nodes_[node].key;
        best_end = i + 1;
      }
    }
    if (best_key == kNoKey) {
      ++pos;
      continue;
    }
    Spot spot;
    spot.start = pos;
    spot.end = best_end;
    spot.phrase = keys_[best_key];
    spot.candidates = postings_[best_key];
    spots.push_back(std::move(spot));
    pos = best_end;
  }
  return spots;
}

void SurfaceDictionary::Save(const std::string &path) const {
  auto out = OpenForWrite(path);
  BinaryWriter w(out);
  w.Header(kMagic, kDictionaryFormatVersion);
  w.U32(text::kTokenizerVersion);
  w.U64(generation_);
  w.U64(keys_.size());
  for (size_t k = 0; k < keys_.size(); ++k) {
    w.Str(keys_[k]);
    w.U32(static_cast<uint32_t>(postings_[k].size()));
    for (ItemId id : postings_[k]) w.U64(id.value());
  }
}

SurfaceDictionary SurfaceDictionary::Load(const std::string &path) {
  auto in = OpenForRead(path);
  BinaryReader r(in, path);
  r.Header(kMagic, kDictionaryFormatVersion);
  if (r.U32() != text::kTokenizerVersion) {
    throw FormatError(path + ": built with a different tokenizer version");
  }
  uint64_t generation = r.U64();
  uint64_t n = r.U64();
  std::vector<std::string> keys;
  std::vector<ItemIdSet> postings;
  keys.reserve(n);
  postings.reserve(n);
  for (uint64_t k = 0; k < n; ++k) {
    keys.push_back(r.Str());
    if (k > 0 && !(keys[k - 1] < keys[k])) {
      throw FormatError(path + ": key table not sorted");
    }
    ItemIdSet ids(r.U32());
    for (auto &id : ids) id = ItemId(r.U64());
    postings.push_back(std::move(ids));
  }
  SurfaceDictionary dict(std::move(keys), std::move(postings));
  dict.generation_ = generation;
  return dict;
}

void AddRecord(SurfaceDictionary::Builder &builder, const ItemRecord &rec,
               const std::vector<std::string> &languages) {
  auto wanted = [&](const std::string &lang) {
    return languages.empty() ||
           std::find(languages.begin(), languages.end(), lang) != languages.end();
  };
  for (const auto &[lang, label] : rec.labels) {
    if (wanted(lang)) builder.Add(label, rec.id);
  }
  for (const auto &[lang, list] : rec.aliases) {
    if (!wanted(lang)) continue;
    for (const auto &alias : list) builder.Add(alias, rec.id);
  }
}

SurfaceDictionary BuildDictionary(std::span<const ItemRecord> records,
                                  const std::vector<std::string> &languages) {
  SurfaceDictionary::Builder builder;
  for (const auto &rec : records) AddRecord(builder, rec, languages);
  return std::move(builder).Build();
}

}  // namespace kblink::surface
