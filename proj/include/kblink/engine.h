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

#ifndef KBLINK_ENGINE_H_
#define KBLINK_ENGINE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kblink/annotator.h"

namespace kblink::service {

// Everything needed to bring up an annotator. Hyperparameters left unset
// keep the values stored in the model.
struct EngineConfig {
  std::string store_dir;
  std::string dictionary_path;
  std::string language_model_path;
  std::string pagerank_path;
  std::string model_path;

  std::optional<double> beta;
  std::optional<double> eta;
  std::optional<uint32_t> max_distance;
  std::optional<double> threshold;

  std::vector<std::string> languages;
  int port = 8457;
  size_t max_candidates = 5;
  size_t max_request_bytes = 1 << 20;

  // Lines of "key = value"; '#' starts a comment. Unknown keys are errors.
  static EngineConfig FromFile(const std::string &path);
  void Set(const std::string &key, const std::string &value);

  // KBLINK_PORT, KBLINK_STORE, KBLINK_DICT, KBLINK_LM, KBLINK_PAGERANK and
  // KBLINK_MODEL replace the corresponding fields when set.
  void ApplyEnvironment();
};

// Immutable bundle of loaded artifacts. Safe for concurrent Annotate calls.
class Engine {
 public:
  // Loads every artifact. Throws FormatError on a bad header, a version
  // mismatch, or an artifact built from a different store generation.
  static std::unique_ptr<Engine> Load(const EngineConfig &config);

  const classify::Annotator &annotator() const { return *annotator_; }
  const EngineConfig &config() const { return config_; }

  // {"text": ..., "annotations": [{"start", "end", "qid", "score",
  // "candidates": [{"qid", "score"}]}]}
  nlohmann::json AnnotateJson(std::string_view text) const;
  // AnnotateJson serialized on one line; shared by the CLI and the service.
  std::string AnnotateLine(std::string_view text) const;

  nlohmann::json Health() const;

 private:
  Engine() = default;

  EngineConfig config_;
  kb::RecordStore records_;
  surface::SurfaceDictionary dictionary_;
  lm::UnigramLM language_model_;
  graph::PageRankVector pagerank_;
  std::unique_ptr<classify::Annotator> annotator_;
};

nlohmann::json AnnotationsToJson(std::string_view text,
                                 const std::vector<classify::Annotation> &annotations,
                                 size_t max_candidates);

}  // namespace kblink::service

#endif  // KBLINK_ENGINE_H_
