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

#ifndef KBLINK_CLI_H_
#define KBLINK_CLI_H_

#include <iosfwd>

namespace kblink::service {

// Entry point of the kblink tool. Subcommands: index, pagerank, train-lm,
// build-dict, train, annotate, evaluate, serve. Returns the process exit code;
// failures print a one-line diagnostic to |err|.
int RunCli(int argc, const char *const *argv, std::istream &in, std::ostream &out,
           std::ostream &err);

}  // namespace kblink::service

#endif  // KBLINK_CLI_H_
