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

#ifndef KBLINK_TYPE_CLOSURE_H_
#define KBLINK_TYPE_CLOSURE_H_

#include <utility>
#include <vector>

#include "kblink/item.h"

namespace kblink::kb {

// human, organization, geographical object
inline const ItemIdSet &DefaultTypeRoots() {
  static const ItemIdSet roots = {ItemId(5), ItemId(43229), ItemId(618123)};
  return roots;
}

struct TypeClosure {
  ItemIdSet roots;
  ItemIdSet members;  // reflexive-transitive subclasses of roots

  bool Contains(ItemId id) const { return kblink::Contains(members, id); }
};

using SubclassEdge = std::pair<ItemId, ItemId>;  // (child, parent)

// Collects every item from which a chain of subclass edges reaches one of
// |roots|. Cycles are fine.
TypeClosure BuildTypeClosure(const std::vector<SubclassEdge> &edges,
                             const ItemIdSet &roots);

// True iff one of the record's instance-of values lies in the closure.
bool FilterItem(const ItemRecord &rec, const TypeClosure &closure);

}  // namespace kblink::kb

#endif  // KBLINK_TYPE_CLOSURE_H_
