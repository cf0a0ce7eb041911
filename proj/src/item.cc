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

#include "kblink/item.h"

#include <algorithm>
#include <charconv>

#include "kblink/error.h"

namespace kblink {

ItemId::ItemId(uint64_t value) : value_(value) {
  if (value == 0) throw InvalidArgument("item id must be positive");
}

std::optional<ItemId> ItemId::Parse(std::string_view text) {
  if (text.size() < 2 || text[0] != 'Q') return std::nullopt;
  std::string_view digits = text.substr(1);
  if (digits[0] == '0') return std::nullopt;  // no leading zeros
  uint64_t value = 0;
  auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || end != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return ItemId(value);
}

void Normalize(ItemIdSet &ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

bool Contains(const ItemIdSet &ids, ItemId id) {
  return std::binary_search(ids.begin(), ids.end(), id);
}

}  // namespace kblink
