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

// Little-endian binary encoding shared by every on-disk artifact. Each
// artifact starts with an 8-byte magic string followed by a u32 format
// version.

#ifndef KBLINK_BINARY_IO_H_
#define KBLINK_BINARY_IO_H_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kblink/error.h"

namespace kblink {

static_assert(std::endian::native == std::endian::little,
              "artifact encoding assumes a little-endian host");

class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream &out) : out_(out) {}

  void U8(uint8_t v) { Raw(&v, 1); }
  void U32(uint32_t v) { Raw(&v, sizeof(v)); }
  void U64(uint64_t v) { Raw(&v, sizeof(v)); }
  void F64(double v) { Raw(&v, sizeof(v)); }
  void Str(std::string_view s) {
    U32(static_cast<uint32_t>(s.size()));
    Raw(s.data(), s.size());
  }
  void Header(std::string_view magic, uint32_t version) {
    char buf[8] = {};
    std::memcpy(buf, magic.data(), std::min<size_t>(magic.size(), 8));
    Raw(buf, 8);
    U32(version);
  }

  void Raw(const void *data, size_t size) {
    out_.write(static_cast<const char *>(data),
               static_cast<std::streamsize>(size));
    if (!out_) throw IoError("write failed");
  }

 private:
  std::ostream &out_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream &in, std::string name)
      : in_(in), name_(std::move(name)) {}

  uint8_t U8() { uint8_t v; Raw(&v, 1); return v; }
  uint32_t U32() { uint32_t v; Raw(&v, sizeof(v)); return v; }
  uint64_t U64() { uint64_t v; Raw(&v, sizeof(v)); return v; }
  double F64() { double v; Raw(&v, sizeof(v)); return v; }
  std::string Str() {
    uint32_t size = U32();
    std::string s(size, '\0');
    Raw(s.data(), size);
    return s;
  }

  // Checks magic and version; throws FormatError on mismatch.
  void Header(std::string_view magic, uint32_t version) {
    char buf[8] = {};
    Raw(buf, 8);
    char want[8] = {};
    std::memcpy(want, magic.data(), std::min<size_t>(magic.size(), 8));
    if (std::memcmp(buf, want, 8) != 0) {
      throw FormatError(name_ + ": not a " + std::string(magic) + " file");
    }
    uint32_t got = U32();
    if (got != version) {
      throw FormatError(name_ + ": format version " + std::to_string(got) +
                        ", expected " + std::to_string(version));
    }
  }

  // True when no bytes remain.
  bool AtEnd() { return in_.peek() == std::char_traits<char>::eof(); }

  void Raw(void *data, size_t size) {
    in_.read(static_cast<char *>(data), static_cast<std::streamsize>(size));
    if (static_cast<size_t>(in_.gcount()) != size) {
      throw FormatError(name_ + ": truncated file");
    }
  }

 private:
  std::istream &in_;
  std::string name_;
};

inline std::ifstream OpenForRead(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

inline std::ofstream OpenForWrite(const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace kblink

#endif  // KBLINK_BINARY_IO_H_
