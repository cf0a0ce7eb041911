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

#include "kblink/indexer.h"

#include <filesystem>

#include "kblink/error.h"
#include "kblink/record_store.h"
#include "kblink/type_closure.h"

namespace kblink::kb {

namespace fs = std::filesystem;

IndexStats IndexDump(const IndexOptions &options) {
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (!fs::is_directory(options.out_dir)) {
    throw IoError("cannot create store directory " + options.out_dir);
  }

  IndexStats stats;

  // Pass 1: subclass edges only.
  std::vector<SubclassEdge> edges;
  {
    DumpReader reader(options.dump_path, options.chunk_size);
    reader.ForEachLine([&](std::string_view line, uint64_t offset) {
      if (line.find(kSubclassOf) == std::string_view::npos) return;
      if (!LooksLikeItem(line)) return;
      try {
        ItemRecord rec = ParseItem(line, offset);
        for (ItemId parent : rec.superclasses) edges.emplace_back(rec.id, parent);
      } catch (const ParseError &) {
        // reported in pass 2
      }
    });
  }
  stats.subclass_edges = edges.size();
  const ItemIdSet &roots =
      options.type_roots.empty() ? DefaultTypeRoots() : options.type_roots;
  TypeClosure closure = BuildTypeClosure(edges, roots);
  edges.clear();
  edges.shrink_to_fit();
  stats.closure_size = closure.members.size();

  // Pass 2: full records.
  RecordWriter records((fs::path(options.out_dir) / kRecordsFile).string(), 0);
  RecordWriter graph((fs::path(options.out_dir) / kGraphFile).string(), 0);
  DumpReader reader(options.dump_path, options.chunk_size);
  if (options.on_error) reader.set_error_callback(options.on_error);
  stats.dump = reader.ForEach([&](ItemRecord &&rec) {
    ItemRecord skeleton;
    skeleton.id = rec.id;
    skeleton.out_links = rec.out_links;
    skeleton.n_statements = rec.n_statements;
    skeleton.n_sitelinks = rec.n_sitelinks;
    graph.Write(skeleton);
    if (FilterItem(rec, closure)) {
      RestrictLanguages(rec, options.languages);
      records.Write(rec);
    }
  });
  stats.kept = records.count();
  records.Close();
  graph.Close();
  return stats;
}

}  // namespace kblink::kb
