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

#ifndef KBLINK_ERROR_H_
#define KBLINK_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kblink {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record. Recoverable: streaming readers skip the record.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, uint64_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  uint64_t offset() const { return offset_; }

 private:
  uint64_t offset_;
};

// File missing, unreadable or unwritable.
class IoError : public Error {
 public:
  using Error::Error;
};

// Artifact with a bad magic header or an unsupported format version.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Argument outside the operation's domain (dimension mismatch, empty input).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace kblink

#endif  // KBLINK_ERROR_H_
