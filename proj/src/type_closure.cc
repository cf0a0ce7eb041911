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

#include "kblink/type_closure.h"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace kblink::kb {

TypeClosure BuildTypeClosure(const std::vector<SubclassEdge> &edges,
                             const ItemIdSet &roots) {
  std::unordered_map<ItemId, std::vector<ItemId>> children;
  for (const auto &[child, parent] : edges) children[parent].push_back(child);

  TypeClosure closure;
  closure.roots = roots;
  Normalize(closure.roots);

  std::unordered_set<ItemId> seen(closure.roots.begin(), closure.roots.end());
  std::deque<ItemId> queue(closure.roots.begin(), closure.roots.end());
  while (!queue.empty()) {
    ItemId parent = queue.front();
    queue.pop_front();
    auto it = children.find(parent);
    if (it == children.end()) continue;
    for (ItemId child : it->second) {
      if (seen.insert(child).second) queue.push_back(child);
    }
  }
  closure.members.assign(seen.begin(), seen.end());
  Normalize(closure.members);
  return closure;
}

bool FilterItem(const ItemRecord &rec, const TypeClosure &closure) {
  for (ItemId type : rec.types) {
    if (closure.Contains(type)) return true;
  }
  return false;
}

}  // namespace kblink::kb
