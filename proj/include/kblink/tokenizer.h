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

// Canonical tokenizer shared by the language model and the spotter.
//
// Text is decoded as UTF-8. Whitespace and punctuation code points are
// separators; a token is a maximal run of other code points. Case is kept.
// Bytes that are not valid UTF-8 count as one non-separator code point each.

#ifndef KBLINK_TOKENIZER_H_
#define KBLINK_TOKENIZER_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace kblink::text {

inline constexpr uint32_t kTokenizerVersion = 1;

struct Token {
  size_t begin;  // byte offsets into the input
  size_t end;
};

bool IsSeparator(char32_t cp);

// Decodes the code point at |pos| and returns its byte length (1 for
// invalid sequences).
size_t DecodeUtf8(std::string_view text, size_t pos, char32_t *cp);

std::vector<Token> Tokenize(std::string_view text);

std::vector<std::string_view> TokenTexts(std::string_view text);

// flags[p] is 1 when byte offset p (0..size) may start or end a match: it
// sits on a code point boundary and is adjacent to a separator or to either
// end of the text. Offsets inside a token are never boundaries.
std::vector<uint8_t> BoundaryFlags(std::string_view text);

}  // namespace kblink::text

#endif  // KBLINK_TOKENIZER_H_
