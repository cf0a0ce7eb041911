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

#include "kblink/evaluation.h"

#include <algorithm>
#include <fstream>

#include "kblink/error.h"

namespace kblink::eval {

using json = nlohmann::json;

namespace {

double Ratio(uint64_t num, uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double F1(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

GoldDocument ParseGoldDocument(const std::string &line, const std::string &name) {
  json doc = json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw InvalidArgument(name + ": malformed JSON");
  }
  auto text = doc.find("text");
  if (text == doc.end() || !text->is_string()) {
    throw InvalidArgument(name + ": missing \"text\"");
  }
  GoldDocument out;
  out.text = text->get<std::string>();
  auto gold = doc.find("gold");
  if (gold != doc.end() && !gold->is_null()) {
    if (!gold->is_array()) throw InvalidArgument(name + ": \"gold\" must be an array");
    for (const auto &g : *gold) {
      if (!g.is_object() || !g.contains("start") || !g.contains("end") ||
          !g["start"].is_number_unsigned() || !g["end"].is_number_unsigned()) {
        throw InvalidArgument(name + ": gold span needs unsigned start and end");
      }
      GoldSpan span;
      span.start = g["start"].get<size_t>();
      span.end = g["end"].get<size_t>();
      auto qid = g.find("qid");
      if (qid != g.end() && !qid->is_null()) {
        if (!qid->is_string()) throw InvalidArgument(name + ": qid must be a string or null");
        span.target = ItemId::Parse(qid->get<std::string>());
        if (!span.target) {
          throw InvalidArgument(name + ": bad qid " + qid->get<std::string>());
        }
      }
      out.gold.push_back(span);
    }
  }
  std::sort(out.gold.begin(), out.gold.end(),
            [](const GoldSpan &a, const GoldSpan &b) {
              return a.start != b.start ? a.start < b.start : a.end < b.end;
            });
  for (size_t i = 0; i < out.gold.size(); ++i) {
    const GoldSpan &s = out.gold[i];
    if (s.start >= s.end || s.end > out.text.size()) {
      throw InvalidArgument(name + ": gold span [" + std::to_string(s.start) + ", " +
                            std::to_string(s.end) + ") out of bounds");
    }
    if (i > 0 && out.gold[i - 1].end > s.start) {
      throw InvalidArgument(name + ": overlapping gold spans at byte " +
                            std::to_string(s.start));
    }
  }
  return out;
}

std::vector<GoldDocument> LoadDataset(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset " + path);
  std::vector<GoldDocument> docs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    docs.push_back(ParseGoldDocument(
        line, path + ": document " + std::to_string(docs.size()) + " (line " +
                  std::to_string(line_no) + ")"));
  }
  return docs;
}

json GoldDocumentToJson(const GoldDocument &doc) {
  json gold = json::array();
  for (const auto &g : doc.gold) {
    gold.push_back({{"start", g.start},
                    {"end", g.end},
                    {"qid", g.target ? json(g.target->str()) : json(nullptr)}});
  }
  return {{"text", doc.text}, {"gold", gold}};
}

bool WeakMatch(const Prediction &pred, const Prediction &gold) {
  const bool overlap = std::max(pred.start, gold.start) < std::min(pred.end, gold.end);
  return overlap && pred.item == gold.item;
}

Counts CountMatches(std::span<const Prediction> predictions,
                    std::span<const GoldSpan> gold) {
  std::vector<Prediction> in_kb;
  for (const auto &g : gold) {
    if (g.target) in_kb.push_back({g.start, g.end, *g.target});
  }
  std::vector<size_t> order(predictions.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return predictions[a].start < predictions[b].start;
  });

  std::vector<bool> used(in_kb.size(), false);
  Counts c;
  for (size_t i : order) {
    bool matched = false;
    for (size_t j = 0; j < in_kb.size(); ++j) {
      if (!used[j] && WeakMatch(predictions[i], in_kb[j])) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    matched ? ++c.tp : ++c.fp;
  }
  c.fn = in_kb.size() - c.tp;
  return c;
}

EvalReport Summarize(std::vector<Counts> per_document) {
  EvalReport report;
  Counts total;
  double p_sum = 0, r_sum = 0, f_sum = 0;
  for (const Counts &c : per_document) {
    total += c;
    double p, r, f;
    if (c.tp + c.fp == 0 && c.tp + c.fn == 0) {
      p = r = f = 1.0;
    } else {
      p = Ratio(c.tp, c.tp + c.fp);
      r = Ratio(c.tp, c.tp + c.fn);
      f = F1(p, r);
    }
    p_sum += p;
    r_sum += r;
    f_sum += f;
  }
  report.micro_precision = Ratio(total.tp, total.tp + total.fp);
  report.micro_recall = Ratio(total.tp, total.tp + total.fn);
  report.micro_f1 = F1(report.micro_precision, report.micro_recall);
  if (!per_document.empty()) {
    const double n = static_cast<double>(per_document.size());
    report.macro_precision = p_sum / n;
    report.macro_recall = r_sum / n;
    report.macro_f1 = f_sum / n;
  }
  report.per_document = std::move(per_document);
  return report;
}

EvalReport Evaluate(const AnnotateFn &annotate,
                    std::span<const GoldDocument> dataset) {
  std::vector<Counts> counts;
  counts.reserve(dataset.size());
  for (const auto &doc : dataset) {
    std::vector<Prediction> predictions = annotate(doc.text);
    counts.push_back(CountMatches(predictions, doc.gold));
  }
  return Summarize(std::move(counts));
}

json EvalReport::ToJson() const {
  json docs = json::array();
  for (const auto &c : per_document) {
    docs.push_back({{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}});
  }
  return {{"micro_precision", micro_precision}, {"micro_recall", micro_recall},
          {"micro_f1", micro_f1},               {"macro_precision", macro_precision},
          {"macro_recall", macro_recall},       {"macro_f1", macro_f1},
          {"per_document", docs}};
}

}  // namespace kblink::eval
