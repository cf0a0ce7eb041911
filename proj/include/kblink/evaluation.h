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

// Gold datasets and InKB scoring under weak annotation matching.
//
// Dataset format: JSON lines, one document per line,
//
//   {"text": "...", "gold": [{"start": 0, "end": 5, "qid": "Q1"}, ...]}
//
// with byte offsets into the UTF-8 text and "qid": null for mentions whose
// referent is not in the knowledge base.

#ifndef KBLINK_EVALUATION_H_
#define KBLINK_EVALUATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "kblink/item.h"

namespace kblink::eval {

struct GoldSpan {
  size_t start = 0;
  size_t end = 0;
  std::optional<ItemId> target;  // nullopt: out of KB

  bool operator==(const GoldSpan &) const = default;
};

struct GoldDocument {
  std::string text;
  std::vector<GoldSpan> gold;  // sorted, non-overlapping
};

struct Prediction {
  size_t start = 0;
  size_t end = 0;
  ItemId item;
};

struct Counts {
  uint64_t tp = 0, fp = 0, fn = 0;

  Counts &operator+=(const Counts &o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const Counts &) const = default;
};

struct EvalReport {
  double micro_precision = 0, micro_recall = 0, micro_f1 = 0;
  double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
  std::vector<Counts> per_document;

  nlohmann::json ToJson() const;
};

// Parses and validates one dataset line. |name| identifies the document in
// error messages. Throws InvalidArgument on bad spans or fields.
GoldDocument ParseGoldDocument(const std::string &line, const std::string &name);

// Reads a JSON-lines dataset; blank lines are ignored.
std::vector<GoldDocument> LoadDataset(const std::string &path);

nlohmann::json GoldDocumentToJson(const GoldDocument &doc);

// Spans overlap by at least one byte and entities agree.
bool WeakMatch(const Prediction &pred, const Prediction &gold);

// Greedy matching in prediction order, each gold used at most once. Gold
// spans without a KB target are dropped first.
Counts CountMatches(std::span<const Prediction> predictions,
                    std::span<const GoldSpan> gold);

// Micro and macro precision, recall and F1 from per-document counts.
EvalReport Summarize(std::vector<Counts> per_document);

using AnnotateFn = std::function<std::vector<Prediction>(const std::string &)>;

EvalReport Evaluate(const AnnotateFn &annotate,
                    std::span<const GoldDocument> dataset);

}  // namespace kblink::eval

#endif  // KBLINK_EVALUATION_H_
