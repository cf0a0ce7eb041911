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

#include "kblink/tokenizer.h"

#include <iterator>

namespace kblink::text {

namespace {

struct Range {
  char32_t lo, hi;
};

// Unicode space separators and the punctuation blocks that occur in names
// and running text. Sorted, non-overlapping.
constexpr Range kSeparators[] = {
    {0x0009, 0x000D}, {0x0020, 0x002F}, {0x003A, 0x0040}, {0x005B, 0x0060},
    {0x007B, 0x007E}, {0x0085, 0x0085}, {0x00A0, 0x00A1}, {0x00A7, 0x00A7},
    {0x00AB, 0x00AB}, {0x00B6, 0x00B7}, {0x00BB, 0x00BB}, {0x00BF, 0x00BF},
    {0x037E, 0x037E}, {0x0387, 0x0387}, {0x055A, 0x055F}, {0x0589, 0x058A},
    {0x05BE, 0x05BE}, {0x05C0, 0x05C0}, {0x05C3, 0x05C3}, {0x05C6, 0x05C6},
    {0x05F3, 0x05F4}, {0x060C, 0x060D}, {0x061B, 0x061B}, {0x061E, 0x061F},
    {0x066A, 0x066D}, {0x06D4, 0x06D4}, {0x0964, 0x0965}, {0x0E4F, 0x0E4F},
    {0x0E5A, 0x0E5B}, {0x1680, 0x1680}, {0x2000, 0x200A}, {0x2010, 0x2029},
    {0x202F, 0x2043}, {0x2045, 0x2051}, {0x2053, 0x205F}, {0x207D, 0x207E},
    {0x208D, 0x208E}, {0x2308, 0x230B}, {0x2329, 0x232A}, {0x2E00, 0x2E4F},
    {0x3000, 0x3003}, {0x3008, 0x3011}, {0x3014, 0x301F}, {0x3030, 0x3030},
    {0x30FB, 0x30FB}, {0xFE10, 0xFE19}, {0xFE30, 0xFE52}, {0xFE54, 0xFE61},
    {0xFE63, 0xFE63}, {0xFE68, 0xFE68}, {0xFE6A, 0xFE6B}, {0xFF01, 0xFF0F},
    {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40}, {0xFF5B, 0xFF65},
};

}  // namespace

bool IsSeparator(char32_t cp) {
  size_t lo = 0, hi = std::size(kSeparators);
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (cp < kSeparators[mid].lo) {
      hi = mid;
    } else if (cp > kSeparators[mid].hi) {
      lo = mid + 1;
    } else {
      return true;
    }
  }
  return false;
}

size_t DecodeUtf8(std::string_view text, size_t pos, char32_t *cp) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  size_t len;
  char32_t value;
  if (b0 < 0x80) {
    *cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    value = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    value = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    value = b0 & 0x07;
  } else {
    *cp = 0xFFFD;
    return 1;
  }
  if (pos + len > text.size()) {
    *cp = 0xFFFD;
    return 1;
  }
  for (size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) {
      *cp = 0xFFFD;
      return 1;
    }
    value = (value << 6) | (b & 0x3F);
  }
  *cp = value;
  return len;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t pos = 0;
  bool in_token = false;
  size_t start = 0;
  while (pos < text.size()) {
    char32_t cp;
    size_t len = DecodeUtf8(text, pos, &cp);
    if (IsSeparator(cp)) {
      if (in_token) tokens.push_back({start, pos});
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      start = pos;
    }
    pos += len;
  }
  if (in_token) tokens.push_back({start, text.size()});
  return tokens;
}

std::vector<std::string_view> TokenTexts(std::string_view text) {
  std::vector<std::string_view> out;
  for (const Token &t : Tokenize(text)) {
    out.push_back(text.substr(t.begin, t.end - t.begin));
  }
  return out;
}

std::vector<uint8_t> BoundaryFlags(std::string_view text) {
  std::vector<uint8_t> flags(text.size() + 1, 0);
  flags[0] = 1;
  flags[text.size()] = 1;
  size_t pos = 0;
  bool prev_sep = true;
  while (pos < text.size()) {
    char32_t cp;
    size_t len = DecodeUtf8(text, pos, &cp);
    bool sep = IsSeparator(cp);
    if (sep || prev_sep) flags[pos] = 1;
    if (sep) flags[pos + len] = 1;
    prev_sep = sep;
    pos += len;
  }
  return flags;
}

}  // namespace kblink::text
