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

#include "kblink/language_model.h"

#include <algorithm>
#include <cmath>

#include "kblink/binary_io.h"
#include "kblink/error.h"
#include "kblink/tokenizer.h"

namespace kblink::lm {

namespace {
constexpr const char *kMagic = "KBLUNILM";
}

double UnigramLM::TokenLogProb(std::string_view token) const {
  const double count = static_cast<double>(Count(token));
  const double denom = static_cast<double>(total_) +
                       alpha_ * (static_cast<double>(counts_.size()) + 1.0);
  return std::log((count + alpha_) / denom);
}

double UnigramLM::PhraseLogProb(std::string_view phrase) const {
  double sum = 0.0;
  for (std::string_view token : text::TokenTexts(phrase)) sum += TokenLogProb(token);
  return sum;
}

uint64_t UnigramLM::Count(std::string_view token) const {
  auto it = counts_.find(std::string(token));
  return it == counts_.end() ? 0 : it->second;
}

void UnigramLM::Save(const std::string &path) const {
  std::vector<std::pair<std::string_view, uint64_t>> sorted(counts_.begin(),
                                                            counts_.end());
  std::sort(sorted.begin(), sorted.end());
  auto out = OpenForWrite(path);
  BinaryWriter w(out);
  w.Header(kMagic, kLanguageModelFormatVersion);
  w.U32(text::kTokenizerVersion);
  w.F64(alpha_);
  w.U64(generation_);
  w.U64(sorted.size());
  for (const auto &[token, count] : sorted) {
    w.Str(token);
    w.U64(count);
  }
}

UnigramLM UnigramLM::Load(const std::string &path) {
  auto in = OpenForRead(path);
  BinaryReader r(in, path);
  r.Header(kMagic, kLanguageModelFormatVersion);
  uint32_t tokenizer = r.U32();
  if (tokenizer != text::kTokenizerVersion) {
    throw FormatError(path + ": built with tokenizer version " +
                      std::to_string(tokenizer));
  }
  UnigramLM lm;
  lm.alpha_ = r.F64();
  lm.generation_ = r.U64();
  uint64_t n = r.U64();
  lm.counts_.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    std::string token = r.Str();
    uint64_t count = r.U64();
    lm.total_ += count;
    lm.counts_.emplace(std::move(token), count);
  }
  return lm;
}

UnigramLMBuilder::UnigramLMBuilder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("smoothing alpha must be positive");
}

void UnigramLMBuilder::Add(std::string_view phrase) {
  for (std::string_view token : text::TokenTexts(phrase)) {
    ++counts_[std::string(token)];
    ++total_;
  }
}

void UnigramLMBuilder::Merge(const UnigramLMBuilder &other) {
  for (const auto &[token, count] : other.counts_) counts_[token] += count;
  total_ += other.total_;
}

UnigramLM UnigramLMBuilder::Build() const {
  if (total_ == 0) throw InvalidArgument("empty corpus");
  UnigramLM lm;
  lm.counts_ = counts_;
  lm.total_ = total_;
  lm.alpha_ = alpha_;
  return lm;
}

UnigramLM TrainLm(const std::vector<std::string> &phrases, double alpha) {
  UnigramLMBuilder builder(alpha);
  for (const auto &phrase : phrases) builder.Add(phrase);
  return builder.Build();
}

}  // namespace kblink::lm
