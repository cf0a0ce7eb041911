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

#ifndef KBLINK_SERVER_H_
#define KBLINK_SERVER_H_

#include <memory>
#include <string>

#include "kblink/engine.h"

namespace kblink::service {

// HTTP front end over a loaded engine:
//
//   POST /api/annotate  {"text": ...}  -> Engine::AnnotateJson
//   GET  /health                       -> Engine::Health
class Server {
 public:
  explicit Server(const Engine &engine);
  ~Server();

  // Binds |host|:|port| and blocks until Stop(). Returns false if the port
  // could not be bound.
  bool Listen(const std::string &host, int port);

  // Binds an ephemeral port and returns it without serving; call Serve()
  // afterwards (typically from another thread).
  int BindToAnyPort(const std::string &host);
  bool Serve();

  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kblink::service

#endif  // KBLINK_SERVER_H_
