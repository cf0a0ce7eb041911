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

#ifndef KBLINK_INDEXER_H_
#define KBLINK_INDEXER_H_

#include <functional>
#include <string>
#include <vector>

#include "kblink/dump_reader.h"
#include "kblink/item.h"

namespace kblink::kb {

struct IndexOptions {
  std::string dump_path;
  std::string out_dir;
  std::vector<std::string> languages;  // empty keeps all
  ItemIdSet type_roots;                // empty means DefaultTypeRoots()
  size_t chunk_size = 1 << 16;
  DumpReader::ErrorCallback on_error;
};

struct IndexStats {
  DumpStats dump;
  uint64_t subclass_edges = 0;
  uint64_t closure_size = 0;
  uint64_t kept = 0;  // items written to records.bin
};

// Builds a record store from a dump in two streaming passes: the first
// collects subclass-of edges to build the type closure, the second writes
// graph.bin with every item and records.bin with the type-filtered items.
IndexStats IndexDump(const IndexOptions &options);

}  // namespace kblink::kb

#endif  // KBLINK_INDEXER_H_
