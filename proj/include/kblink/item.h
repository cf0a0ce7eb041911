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

#ifndef KBLINK_ITEM_H_
#define KBLINK_ITEM_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kblink {

// Numeric identifier of a knowledge-base item, i.e. the Q-id without its
// prefix. Always positive once constructed through Parse or the constructor.
class ItemId {
 public:
  constexpr ItemId() = default;
  explicit ItemId(uint64_t value);

  // Parses the canonical "Q<digits>" form. Returns nullopt on anything else.
  static std::optional<ItemId> Parse(std::string_view text);

  constexpr uint64_t value() const { return value_; }
  constexpr bool valid() const { return value_ != 0; }
  std::string str() const { return "Q" + std::to_string(value_); }

  friend constexpr auto operator<=>(ItemId, ItemId) = default;

 private:
  uint64_t value_ = 0;
};

// Sorted, duplicate-free vector of ids.
using ItemIdSet = std::vector<ItemId>;

// Sorts and deduplicates |ids| in place.
void Normalize(ItemIdSet &ids);

// True if the sorted set |ids| contains |id|.
bool Contains(const ItemIdSet &ids, ItemId id);

// Compact value describing one knowledge-base item.
struct ItemRecord {
  ItemId id;
  std::map<std::string, std::string> labels;
  std::map<std::string, std::vector<std::string>> aliases;
  std::map<std::string, std::string> descriptions;
  ItemIdSet out_links;  // statement and qualifier values
  ItemIdSet types;      // instance-of values
  ItemIdSet superclasses;  // subclass-of values
  uint32_t n_statements = 0;
  uint32_t n_sitelinks = 0;

  bool operator==(const ItemRecord &) const = default;
};

}  // namespace kblink

template <>
struct std::hash<kblink::ItemId> {
  size_t operator()(kblink::ItemId id) const noexcept {
    return std::hash<uint64_t>()(id.value());
  }
};

#endif  // KBLINK_ITEM_H_
