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

#include "kblink/engine.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kblink/error.h"

namespace kblink::service {

using json = nlohmann::json;

namespace {

std::string Trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) {
    throw InvalidArgument("config key '" + key + "': bad number '" + value + "'");
  }
  return out;
}

void CheckGeneration(const char *what, uint64_t artifact, uint64_t store) {
  if (artifact != store) {
    throw FormatError("stale " + std::string(what) + ": built from store generation " +
                      std::to_string(artifact) + " but the store is at generation " +
                      std::to_string(store) + "; rebuild it");
  }
}

}  // namespace

void EngineConfig::Set(const std::string &key, const std::string &value) {
  if (key == "store") {
    store_dir = value;
  } else if (key == "dict") {
    dictionary_path = value;
  } else if (key == "lm") {
    language_model_path = value;
  } else if (key == "pagerank") {
    pagerank_path = value;
  } else if (key == "model") {
    model_path = value;
  } else if (key == "beta") {
    beta = ParseNumber<double>(key, value);
  } else if (key == "eta") {
    eta = ParseNumber<double>(key, value);
  } else if (key == "max_distance") {
    max_distance = ParseNumber<uint32_t>(key, value);
  } else if (key == "threshold") {
    threshold = ParseNumber<double>(key, value);
  } else if (key == "langs") {
    languages = SplitList(value);
  } else if (key == "port") {
    port = ParseNumber<int>(key, value);
  } else if (key == "max_candidates") {
    max_candidates = ParseNumber<size_t>(key, value);
  } else if (key == "max_request_bytes") {
    max_request_bytes = ParseNumber<size_t>(key, value);
  } else {
    throw InvalidArgument("unknown config key '" + key + "'");
  }
}

EngineConfig EngineConfig::FromFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  EngineConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    config.Set(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return config;
}

void EngineConfig::ApplyEnvironment() {
  static const std::pair<const char *, const char *> kVars[] = {
      {"KBLINK_PORT", "port"},         {"KBLINK_STORE", "store"},
      {"KBLINK_DICT", "dict"},         {"KBLINK_LM", "lm"},
      {"KBLINK_PAGERANK", "pagerank"}, {"KBLINK_MODEL", "model"},
  };
  for (const auto &[var, key] : kVars) {
    if (const char *value = std::getenv(var); value != nullptr && *value != '\0') {
      Set(key, value);
    }
  }
}

std::unique_ptr<Engine> Engine::Load(const EngineConfig &config) {
  std::unique_ptr<Engine> engine(new Engine());
  engine->config_ = config;
  engine->records_ = kb::RecordStore::Open(config.store_dir);
  engine->dictionary_ = surface::SurfaceDictionary::Load(config.dictionary_path);
  engine->language_model_ = lm::UnigramLM::Load(config.language_model_path);
  engine->pagerank_ = graph::PageRankVector::Load(config.pagerank_path);
  classify::LinearModel model = classify::LinearModel::Load(config.model_path);

  const uint64_t generation = engine->records_.generation();
  CheckGeneration("dictionary", engine->dictionary_.source_generation(), generation);
  CheckGeneration("language model", engine->language_model_.source_generation(),
                  generation);
  CheckGeneration("pagerank table", engine->pagerank_.source_generation(), generation);

  if (config.beta) model.config.similarity.beta = *config.beta;
  if (config.eta) model.config.similarity.eta = *config.eta;
  if (config.max_distance) model.config.similarity.max_distance = *config.max_distance;
  if (config.threshold) model.config.threshold = *config.threshold;
  model.config.similarity.Validate();

  classify::Resources resources;
  resources.dictionary = &engine->dictionary_;
  resources.language_model = &engine->language_model_;
  resources.pagerank = &engine->pagerank_;
  resources.records = &engine->records_;
  engine->annotator_ = std::make_unique<classify::Annotator>(resources, std::move(model));
  return engine;
}

json AnnotationsToJson(std::string_view text,
                       const std::vector<classify::Annotation> &annotations,
                       size_t max_candidates) {
  json list = json::array();
  for (const auto &a : annotations) {
    json candidates = json::array();
    for (size_t i = 0; i < a.candidates.size() && i < max_candidates; ++i) {
      candidates.push_back(
          {{"qid", a.candidates[i].item.str()}, {"score", a.candidates[i].score}});
    }
    list.push_back({{"start", a.spot.start},
                    {"end", a.spot.end},
                    {"qid", a.item.str()},
                    {"score", a.score},
                    {"candidates", std::move(candidates)}});
  }
  return {{"text", std::string(text)}, {"annotations", std::move(list)}};
}

json Engine::AnnotateJson(std::string_view text) const {
  return AnnotationsToJson(text, annotator_->Annotate(text), config_.max_candidates);
}

std::string Engine::AnnotateLine(std::string_view text) const {
  return AnnotateJson(text).dump(-1, ' ', false, json::error_handler_t::replace);
}

json Engine::Health() const {
  return {{"status", "ok"},
          {"store_generation", records_.generation()},
          {"items", records_.size()},
          {"dictionary_keys", dictionary_.size()},
          {"versions",
           {{"records", kb::kRecordFormatVersion},
            {"dictionary", surface::kDictionaryFormatVersion},
            {"language_model", lm::kLanguageModelFormatVersion},
            {"pagerank", graph::kPageRankFormatVersion},
            {"model", classify::kModelFormatVersion}}}};
}

}  // namespace kblink::service
