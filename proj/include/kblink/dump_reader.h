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

#ifndef KBLINK_DUMP_READER_H_
#define KBLINK_DUMP_READER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "kblink/error.h"
#include "kblink/item.h"

namespace kblink::kb {

// Property ids used when reading statements.
inline constexpr std::string_view kInstanceOf = "P31";
inline constexpr std::string_view kSubclassOf = "P279";

// Strips the array punctuation that surrounds entities in a full dump: a
// trailing comma, and lines consisting only of "[" or "]". Returns an empty
// view for lines that carry no entity.
std::string_view TrimDumpLine(std::string_view line);

// Parses one entity in the Wikidata JSON layout into an ItemRecord. |offset|
// is the byte offset of the record in its file and is reported in errors.
// Throws ParseError for malformed JSON or non-item entities.
ItemRecord ParseItem(std::string_view json, uint64_t offset = 0);

// Cheap pre-check: true if the entity on this line is an item (not a
// property or lexeme). Does not validate the JSON.
bool LooksLikeItem(std::string_view line);

struct DumpStats {
  uint64_t lines = 0;
  uint64_t items = 0;
  uint64_t skipped = 0;  // non-item entities
  uint64_t errors = 0;   // malformed records
};

// Streams a dump file one line at a time in bounded memory. Plain and gzip
// files are both accepted. Malformed records are reported through the error
// callback and skipped.
class DumpReader {
 public:
  using ItemCallback = std::function<void(ItemRecord &&)>;
  using ErrorCallback = std::function<void(const ParseError &)>;

  // |chunk_size| is the read buffer size; records may span chunks.
  explicit DumpReader(std::string path, size_t chunk_size = 1 << 16);

  void set_error_callback(ErrorCallback cb) { on_error_ = std::move(cb); }

  // Calls |on_item| for every well-formed item in file order.
  DumpStats ForEach(const ItemCallback &on_item);

  // Calls |on_line| for every raw entity line, leaving parsing to the caller.
  // Used by passes that only need a few fields.
  DumpStats ForEachLine(
      const std::function<void(std::string_view, uint64_t)> &on_line);

 private:
  std::string path_;
  size_t chunk_size_;
  ErrorCallback on_error_;
};

}  // namespace kblink::kb

#endif  // KBLINK_DUMP_READER_H_
