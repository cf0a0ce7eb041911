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

#ifndef KBLINK_LANGUAGE_MODEL_H_
#define KBLINK_LANGUAGE_MODEL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kblink::lm {

inline constexpr uint32_t kLanguageModelFormatVersion = 1;

// Add-alpha smoothed unigram model over canonical tokens. All unseen tokens
// share one extra vocabulary slot, so the distribution over
// (seen tokens + unseen class) sums to one.
class UnigramLM {
 public:
  UnigramLM() = default;

  // log P(token)
  double TokenLogProb(std::string_view token) const;

  // Sum of TokenLogProb over the phrase's tokens; 0 for a phrase with no
  // tokens.
  double PhraseLogProb(std::string_view phrase) const;

  uint64_t Count(std::string_view token) const;
  uint64_t total_tokens() const { return total_; }
  size_t vocab_size() const { return counts_.size(); }
  double alpha() const { return alpha_; }

  uint64_t source_generation() const { return generation_; }
  void set_source_generation(uint64_t g) { generation_ = g; }

  // Token-count table, sorted by token for stable output.
  void Save(const std::string &path) const;
  static UnigramLM Load(const std::string &path);

 private:
  friend class UnigramLMBuilder;

  std::unordered_map<std::string, uint64_t> counts_;
  uint64_t total_ = 0;
  double alpha_ = 1.0;
  uint64_t generation_ = 0;
};

// Single-pass counter. Builders over disjoint shards can be merged.
class UnigramLMBuilder {
 public:
  explicit UnigramLMBuilder(double alpha = 1.0);

  void Add(std::string_view phrase);
  void Merge(const UnigramLMBuilder &other);

  // Throws InvalidArgument("empty corpus") if no token was seen.
  UnigramLM Build() const;

 private:
  std::unordered_map<std::string, uint64_t> counts_;
  uint64_t total_ = 0;
  double alpha_;
};

UnigramLM TrainLm(const std::vector<std::string> &phrases, double alpha = 1.0);

}  // namespace kblink::lm

#endif  // KBLINK_LANGUAGE_MODEL_H_
