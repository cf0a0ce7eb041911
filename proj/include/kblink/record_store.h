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

// On-disk record store.
//
// A store is a directory with two record files sharing one format:
//
//   records.bin  items that passed the type filter, with labels and aliases
//   graph.bin    every parsed item, reduced to id, out-links and counts
//
// Each file holds a header (magic, version, store generation, record count)
// followed by length-prefixed records. The generation increases on every
// upsert that changes content; derived artifacts remember the generation they
// were built from so that stale ones can be detected.

#ifndef KBLINK_RECORD_STORE_H_
#define KBLINK_RECORD_STORE_H_

#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "kblink/item.h"

namespace kblink::kb {

inline constexpr uint32_t kRecordFormatVersion = 1;

inline constexpr const char *kRecordsFile = "records.bin";
inline constexpr const char *kGraphFile = "graph.bin";

// Appends records to a record file without holding them in memory.
class RecordWriter {
 public:
  RecordWriter(const std::string &path, uint64_t generation);
  ~RecordWriter();

  RecordWriter(const RecordWriter &) = delete;
  RecordWriter &operator=(const RecordWriter &) = delete;

  void Write(const ItemRecord &rec);

  // Patches the record count into the header and closes the file.
  void Close();

  uint64_t count() const { return count_; }

 private:
  std::string path_;
  std::ofstream out_;
  uint64_t count_ = 0;
  bool closed_ = false;
};

struct RecordFileInfo {
  uint64_t generation = 0;
  uint64_t count = 0;
};

// Reads the header of a record file.
RecordFileInfo ReadRecordFileInfo(const std::string &path);

// Streams every record of a record file to |fn|.
RecordFileInfo ForEachRecord(const std::string &path,
                             const std::function<void(ItemRecord &&)> &fn);

// Read access to item records by id.
class RecordLookup {
 public:
  virtual ~RecordLookup() = default;
  virtual const ItemRecord *Find(ItemId id) const = 0;
};

// In-memory record table with replace-on-upsert semantics.
class RecordStore : public RecordLookup {
 public:
  RecordStore() = default;

  // Loads records.bin from |dir|. Throws IoError if absent.
  static RecordStore Open(const std::string &dir);

  const ItemRecord *Find(ItemId id) const override;

  // Replaces any previous record with the same id. Returns true if the store
  // content changed, in which case the generation is bumped and artifacts
  // derived from older generations become stale.
  bool ApplyUpsert(ItemRecord rec);

  // Rewrites records.bin in |dir| atomically. Throws IoError when the
  // directory is not writable.
  void Save(const std::string &dir) const;

  size_t size() const { return records_.size(); }
  uint64_t generation() const { return generation_; }
  bool IsStale(uint64_t derived_generation) const {
    return derived_generation != generation_;
  }

  // Records in ascending id order.
  std::vector<const ItemRecord *> Sorted() const;

 private:
  std::unordered_map<ItemId, ItemRecord> records_;
  uint64_t generation_ = 0;
};

// Keeps only the label, alias and description languages in |langs|. An empty
// list keeps everything.
void RestrictLanguages(ItemRecord &rec, const std::vector<std::string> &langs);

}  // namespace kblink::kb

#endif  // KBLINK_RECORD_STORE_H_
