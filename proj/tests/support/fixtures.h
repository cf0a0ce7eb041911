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

#ifndef KBLINK_TESTS_FIXTURES_H_
#define KBLINK_TESTS_FIXTURES_H_

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "kblink/annotator.h"
#include "kblink/evaluation.h"
#include "kblink/item.h"
#include "kblink/language_model.h"
#include "kblink/pagerank.h"
#include "kblink/record_store.h"
#include "kblink/surface_dictionary.h"

namespace kblink::testing {

// Directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "kblink-XXXXXX").string();
    if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::string file(const std::string &name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ItemRecord MakeItem(uint64_t id, const std::string &label,
                           std::vector<uint64_t> links = {}, uint64_t type = 5) {
  ItemRecord rec;
  rec.id = ItemId(id);
  rec.labels["en"] = label;
  for (uint64_t l : links) rec.out_links.push_back(ItemId(l));
  rec.out_links.push_back(ItemId(type));
  Normalize(rec.out_links);
  rec.types = {ItemId(type)};
  rec.n_statements = static_cast<uint32_t>(rec.out_links.size());
  return rec;
}

inline constexpr const char *kFigureSentence =
    "Associated Press writer Julie Pace contributed from Washington.";

// The news sentence KB: three unambiguous, mutually linked items.
inline std::vector<ItemRecord> FigureKb() {
  ItemRecord ap = MakeItem(40469, "Associated Press", {20000, 61}, 43229);
  ap.aliases["en"] = {"AP"};
  ap.n_sitelinks = 40;
  ItemRecord pace = MakeItem(20000, "Julie Pace", {40469, 61}, 5);
  pace.aliases["en"] = {"Pace"};
  pace.n_sitelinks = 2;
  ItemRecord washington = MakeItem(61, "Washington", {40469, 20000}, 618123);
  washington.n_sitelinks = 200;
  return {ap, pace, washington};
}

// Training documents for FigureKb. The news sentence is fully linked;
// bare aliases in unrelated text are not.
inline std::vector<eval::GoldDocument> FigureCorpus() {
  std::vector<eval::GoldDocument> docs;
  eval::GoldDocument figure;
  figure.text = kFigureSentence;
  figure.gold = {{0, 16, ItemId(40469)}, {24, 34, ItemId(20000)}, {52, 62, ItemId(61)}};
  for (int i = 0; i < 3; ++i) docs.push_back(figure);
  for (const char *text : {"Runners keep Pace with the leaders.", "The AP exam is in May.",
                           "Pace and AP were both on the list."}) {
    docs.push_back({text, {}});
  }
  return docs;
}

// Owns in-memory artifacts built from a record list.
struct Toolkit {
  kb::RecordStore store;
  surface::SurfaceDictionary dictionary;
  lm::UnigramLM language_model;
  graph::PageRankVector pagerank;

  classify::Resources resources() const {
    return {&dictionary, &language_model, &pagerank, &store};
  }
};

inline std::unique_ptr<Toolkit> BuildToolkit(const std::vector<ItemRecord> &records) {
  auto kit = std::make_unique<Toolkit>();
  std::vector<std::string> labels;
  for (const auto &rec : records) {
    kit->store.ApplyUpsert(rec);
    for (const auto &[lang, label] : rec.labels) labels.push_back(label);
  }
  kit->dictionary = surface::BuildDictionary(records, {});
  kit->language_model = lm::TrainLm(labels);
  kit->pagerank = graph::ComputePageRank(records);
  return kit;
}

}  // namespace kblink::testing

#endif  // KBLINK_TESTS_FIXTURES_H_
