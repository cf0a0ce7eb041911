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

#include "kblink/dump_reader.h"

#include <zlib.h>

#include <algorithm>
#include <memory>
#include <vector>

#include "json.hpp"

namespace kblink::kb {

using json = nlohmann::json;

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

// Returns the item referenced by a wikibase-entityid data value, if any.
std::optional<ItemId> ItemValue(const json &snak) {
  if (!snak.is_object()) return std::nullopt;
  auto dv = snak.find("datavalue");
  if (dv == snak.end() || !dv->is_object()) return std::nullopt;
  auto type = dv->find("type");
  if (type == dv->end() || *type != "wikibase-entityid") return std::nullopt;
  auto value = dv->find("value");
  if (value == dv->end() || !value->is_object()) return std::nullopt;
  auto etype = value->find("entity-type");
  if (etype != value->end() && *etype != "item") return std::nullopt;
  auto numeric = value->find("numeric-id");
  if (numeric != value->end() && numeric->is_number_unsigned()) {
    uint64_t v = numeric->get<uint64_t>();
    if (v > 0) return ItemId(v);
  }
  auto id = value->find("id");
  if (id != value->end() && id->is_string()) {
    return ItemId::Parse(id->get_ref<const std::string &>());
  }
  return std::nullopt;
}

std::string TermValue(const json &term) {
  if (term.is_object()) {
    auto v = term.find("value");
    if (v != term.end() && v->is_string()) return v->get<std::string>();
  }
  return {};
}

// Returns nullopt for well-formed entities that are not items.
std::optional<ItemRecord> ParseEntity(std::string_view text, uint64_t offset) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ParseError("malformed entity JSON", offset);
  }
  auto type = doc.find("type");
  if (type != doc.end() && type->is_string() && *type != "item") {
    return std::nullopt;
  }
  auto id_field = doc.find("id");
  if (id_field == doc.end() || !id_field->is_string()) {
    throw ParseError("entity without id", offset);
  }
  const auto &id_text = id_field->get_ref<const std::string &>();
  if (!id_text.empty() && id_text[0] != 'Q') return std::nullopt;
  auto id = ItemId::Parse(id_text);
  if (!id) throw ParseError("bad item id '" + id_text + "'", offset);

  ItemRecord rec;
  rec.id = *id;

  if (auto labels = doc.find("labels");
      labels != doc.end() && labels->is_object()) {
    for (const auto &[lang, term] : labels->items()) {
      std::string value = TermValue(term);
      if (!value.empty()) rec.labels[lang] = std::move(value);
    }
  }
  if (auto descs = doc.find("descriptions");
      descs != doc.end() && descs->is_object()) {
    for (const auto &[lang, term] : descs->items()) {
      std::string value = TermValue(term);
      if (!value.empty()) rec.descriptions[lang] = std::move(value);
    }
  }
  if (auto aliases = doc.find("aliases");
      aliases != doc.end() && aliases->is_object()) {
    for (const auto &[lang, terms] : aliases->items()) {
      if (!terms.is_array()) continue;
      std::vector<std::string> &list = rec.aliases[lang];
      for (const auto &term : terms) {
        std::string value = TermValue(term);
        if (value.empty()) continue;
        if (std::find(list.begin(), list.end(), value) == list.end()) {
          list.push_back(std::move(value));
        }
      }
      if (list.empty()) rec.aliases.erase(lang);
    }
  }

  if (auto claims = doc.find("claims");
      claims != doc.end() && claims->is_object()) {
    for (const auto &[property, statements] : claims->items()) {
      if (!statements.is_array()) continue;
      for (const auto &statement : statements) {
        ++rec.n_statements;
        if (!statement.is_object()) continue;
        if (auto main = statement.find("mainsnak"); main != statement.end()) {
          if (auto target = ItemValue(*main)) {
            rec.out_links.push_back(*target);
            if (property == kInstanceOf) rec.types.push_back(*target);
            if (property == kSubclassOf) rec.superclasses.push_back(*target);
          }
        }
        auto qualifiers = statement.find("qualifiers");
        if (qualifiers == statement.end() || !qualifiers->is_object()) continue;
        for (const auto &[qprop, snaks] : qualifiers->items()) {
          if (!snaks.is_array()) continue;
          for (const auto &snak : snaks) {
            if (auto target = ItemValue(snak)) rec.out_links.push_back(*target);
          }
        }
      }
    }
  }
  Normalize(rec.out_links);
  Normalize(rec.types);
  Normalize(rec.superclasses);

  if (auto sitelinks = doc.find("sitelinks");
      sitelinks != doc.end() && sitelinks->is_object()) {
    rec.n_sitelinks = static_cast<uint32_t>(sitelinks->size());
  }
  return rec;
}

struct GzCloser {
  void operator()(gzFile f) const { gzclose(f); }
};

}  // namespace

std::string_view TrimDumpLine(std::string_view line) {
  while (!line.empty() && IsSpace(line.front())) line.remove_prefix(1);
  while (!line.empty() && IsSpace(line.back())) line.remove_suffix(1);
  if (!line.empty() && line.back() == ',') line.remove_suffix(1);
  while (!line.empty() && IsSpace(line.back())) line.remove_suffix(1);
  if (line == "[" || line == "]") return {};
  return line;
}

bool LooksLikeItem(std::string_view line) {
  return line.find("\"type\":\"item\"") != std::string_view::npos ||
         line.find("\"type\": \"item\"") != std::string_view::npos;
}

ItemRecord ParseItem(std::string_view json_text, uint64_t offset) {
  auto rec = ParseEntity(json_text, offset);
  if (!rec) throw ParseError("entity is not an item", offset);
  return std::move(*rec);
}

DumpReader::DumpReader(std::string path, size_t chunk_size)
    : path_(std::move(path)), chunk_size_(std::max<size_t>(chunk_size, 1)) {}

DumpStats DumpReader::ForEachLine(
    const std::function<void(std::string_view, uint64_t)> &on_line) {
  // gzopen reads uncompressed files transparently.
  std::unique_ptr<gzFile_s, GzCloser> file(gzopen(path_.c_str(), "rb"));
  if (!file) throw IoError("cannot open dump " + path_);
  gzbuffer(file.get(), 1 << 17);

  DumpStats stats;
  std::vector<char> chunk(chunk_size_);
  std::string pending;      // partial line carried across chunks
  uint64_t pending_offset = 0;
  uint64_t position = 0;

  auto emit = [&](std::string_view line, uint64_t offset) {
    ++stats.lines;
    std::string_view entity = TrimDumpLine(line);
    if (!entity.empty()) on_line(entity, offset);
  };

  for (;;) {
    int n = gzread(file.get(), chunk.data(), static_cast<unsigned>(chunk.size()));
    if (n < 0) {
      int errnum = 0;
      throw IoError("read error in " + path_ + ": " +
                    gzerror(file.get(), &errnum));
    }
    if (n == 0) break;
    std::string_view data(chunk.data(), static_cast<size_t>(n));
    size_t start = 0;
    while (start < data.size()) {
      size_t nl = data.find('\n', start);
      if (nl == std::string_view::npos) {
        if (pending.empty()) pending_offset = position + start;
        pending.append(data.substr(start));
        break;
      }
      if (pending.empty()) {
        emit(data.substr(start, nl - start), position + start);
      } else {
        pending.append(data.substr(start, nl - start));
        emit(pending, pending_offset);
        pending.clear();
      }
      start = nl + 1;
    }
    position += static_cast<uint64_t>(n);
  }
  if (!pending.empty()) emit(pending, pending_offset);
  return stats;
}

DumpStats DumpReader::ForEach(const ItemCallback &on_item) {
  uint64_t items = 0, skipped = 0, errors = 0;
  DumpStats stats = ForEachLine([&](std::string_view line, uint64_t offset) {
    try {
      auto rec = ParseEntity(line, offset);
      if (!rec) {
        ++skipped;
        return;
      }
      ++items;
      on_item(std::move(*rec));
    } catch (const ParseError &e) {
      ++errors;
      if (on_error_) on_error_(e);
    }
  });
  stats.items = items;
  stats.skipped = skipped;
  stats.errors = errors;
  return stats;
}

}  // namespace kblink::kb
