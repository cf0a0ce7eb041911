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

#include "kblink/record_store.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "kblink/binary_io.h"
#include "kblink/error.h"

namespace kblink::kb {

namespace fs = std::filesystem;

namespace {

constexpr const char *kMagic = "KBLRECS";
// Header: magic(8) version(4) generation(8) count(8).
constexpr std::streamoff kCountOffset = 8 + 4 + 8;

void WriteIds(BinaryWriter &w, const ItemIdSet &ids) {
  w.U32(static_cast<uint32_t>(ids.size()));
  for (ItemId id : ids) w.U64(id.value());
}

ItemIdSet ReadIds(BinaryReader &r) {
  ItemIdSet ids(r.U32());
  for (auto &id : ids) id = ItemId(r.U64());
  return ids;
}

void WriteTerms(BinaryWriter &w, const std::map<std::string, std::string> &m) {
  w.U32(static_cast<uint32_t>(m.size()));
  for (const auto &[lang, value] : m) {
    w.Str(lang);
    w.Str(value);
  }
}

std::map<std::string, std::string> ReadTerms(BinaryReader &r) {
  std::map<std::string, std::string> m;
  for (uint32_t n = r.U32(); n > 0; --n) {
    std::string lang = r.Str();
    m[std::move(lang)] = r.Str();
  }
  return m;
}

void EncodeRecord(BinaryWriter &w, const ItemRecord &rec) {
  w.U64(rec.id.value());
  WriteTerms(w, rec.labels);
  w.U32(static_cast<uint32_t>(rec.aliases.size()));
  for (const auto &[lang, list] : rec.aliases) {
    w.Str(lang);
    w.U32(static_cast<uint32_t>(list.size()));
    for (const auto &alias : list) w.Str(alias);
  }
  WriteTerms(w, rec.descriptions);
  WriteIds(w, rec.out_links);
  WriteIds(w, rec.types);
  WriteIds(w, rec.superclasses);
  w.U32(rec.n_statements);
  w.U32(rec.n_sitelinks);
}

ItemRecord DecodeRecord(BinaryReader &r) {
  ItemRecord rec;
  rec.id = ItemId(r.U64());
  rec.labels = ReadTerms(r);
  for (uint32_t n = r.U32(); n > 0; --n) {
    std::string lang = r.Str();
    auto &list = rec.aliases[lang];
    list.resize(r.U32());
    for (auto &alias : list) alias = r.Str();
  }
  rec.descriptions = ReadTerms(r);
  rec.out_links = ReadIds(r);
  rec.types = ReadIds(r);
  rec.superclasses = ReadIds(r);
  rec.n_statements = r.U32();
  rec.n_sitelinks = r.U32();
  return rec;
}

}  // namespace

RecordWriter::RecordWriter(const std::string &path, uint64_t generation)
    : path_(path), out_(OpenForWrite(path)) {
  BinaryWriter w(out_);
  w.Header(kMagic, kRecordFormatVersion);
  w.U64(generation);
  w.U64(0);  // count, patched by Close()
}

RecordWriter::~RecordWriter() {
  if (!closed_) {
    try {
      Close();
    } catch (...) {
    }
  }
}

void RecordWriter::Write(const ItemRecord &rec) {
  std::ostringstream buf;
  BinaryWriter body(buf);
  EncodeRecord(body, rec);
  const std::string bytes = buf.str();
  BinaryWriter w(out_);
  w.U32(static_cast<uint32_t>(bytes.size()));
  w.Raw(bytes.data(), bytes.size());
  ++count_;
}

void RecordWriter::Close() {
  if (closed_) return;
  closed_ = true;
  out_.seekp(kCountOffset);
  BinaryWriter(out_).U64(count_);
  out_.close();
  if (!out_) throw IoError("cannot finish " + path_);
}

RecordFileInfo ReadRecordFileInfo(const std::string &path) {
  auto in = OpenForRead(path);
  BinaryReader r(in, path);
  r.Header(kMagic, kRecordFormatVersion);
  RecordFileInfo info;
  info.generation = r.U64();
  info.count = r.U64();
  return info;
}

RecordFileInfo ForEachRecord(const std::string &path,
                             const std::function<void(ItemRecord &&)> &fn) {
  auto in = OpenForRead(path);
  BinaryReader r(in, path);
  r.Header(kMagic, kRecordFormatVersion);
  RecordFileInfo info;
  info.generation = r.U64();
  info.count = r.U64();
  std::string bytes;
  for (uint64_t i = 0; i < info.count; ++i) {
    bytes.resize(r.U32());
    r.Raw(bytes.data(), bytes.size());
    std::istringstream body(bytes);
    BinaryReader br(body, path);
    fn(DecodeRecord(br));
  }
  return info;
}

RecordStore RecordStore::Open(const std::string &dir) {
  RecordStore store;
  auto info = ForEachRecord((fs::path(dir) / kRecordsFile).string(),
                            [&](ItemRecord &&rec) {
                              ItemId id = rec.id;
                              store.records_[id] = std::move(rec);
                            });
  store.generation_ = info.generation;
  return store;
}

const ItemRecord *RecordStore::Find(ItemId id) const {
  auto it = records_.find(id);
  return it == records_.end() ? nullptr : &it->second;
}

bool RecordStore::ApplyUpsert(ItemRecord rec) {
  auto it = records_.find(rec.id);
  if (it != records_.end() && it->second == rec) return false;
  ItemId id = rec.id;
  records_[id] = std::move(rec);
  ++generation_;
  return true;
}

void RecordStore::Save(const std::string &dir) const {
  if (!fs::is_directory(dir)) throw IoError("store directory " + dir + " unavailable");
  const fs::path final_path = fs::path(dir) / kRecordsFile;
  const fs::path tmp_path = fs::path(dir) / (std::string(kRecordsFile) + ".tmp");
  {
    RecordWriter writer(tmp_path.string(), generation_);
    for (const ItemRecord *rec : Sorted()) writer.Write(*rec);
    writer.Close();
  }
  std::error_code ec;
  fs::rename(tmp_path, final_path, ec);
  if (ec) throw IoError("cannot replace " + final_path.string() + ": " + ec.message());
}

std::vector<const ItemRecord *> RecordStore::Sorted() const {
  std::vector<const ItemRecord *> out;
  out.reserve(records_.size());
  for (const auto &[id, rec] : records_) out.push_back(&rec);
  std::sort(out.begin(), out.end(),
            [](const ItemRecord *a, const ItemRecord *b) { return a->id < b->id; });
  return out;
}

void RestrictLanguages(ItemRecord &rec, const std::vector<std::string> &langs) {
  if (langs.empty()) return;
  auto keep = [&](const std::string &lang) {
    return std::find(langs.begin(), langs.end(), lang) != langs.end();
  };
  std::erase_if(rec.labels, [&](const auto &kv) { return !keep(kv.first); });
  std::erase_if(rec.aliases, [&](const auto &kv) { return !keep(kv.first); });
  std::erase_if(rec.descriptions, [&](const auto &kv) { return !keep(kv.first); });
}

}  // namespace kblink::kb
