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

#include "kblink/server.h"

#include "httplib.h"

namespace kblink::service {

using json = nlohmann::json;

namespace {

void JsonError(httplib::Response &res, int status, const std::string &message) {
  res.status = status;
  res.set_content(json{{"error", message}}.dump(), "application/json");
}

}  // namespace

struct Server::Impl {
  const Engine &engine;
  httplib::Server http;

  explicit Impl(const Engine &e) : engine(e) {}
};

Server::Server(const Engine &engine) : impl_(std::make_unique<Impl>(engine)) {
  auto &http = impl_->http;
  const Engine &eng = impl_->engine;

  // Requests above the limit are answered with 413 by httplib itself.
  http.set_payload_max_length(eng.config().max_request_bytes);

  http.Post("/api/annotate", [&eng](const httplib::Request &req, httplib::Response &res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      JsonError(res, 400, "request body must be a JSON object");
      return;
    }
    auto text = body.find("text");
    if (text == body.end() || !text->is_string()) {
      JsonError(res, 400, "missing string field \"text\"");
      return;
    }
    res.set_content(eng.AnnotateLine(text->get_ref<const std::string &>()),
                    "application/json");
  });

  http.Get("/health", [&eng](const httplib::Request &, httplib::Response &res) {
    res.set_content(eng.Health().dump(), "application/json");
  });

  http.set_exception_handler(
      [](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception &e) {
          message = e.what();
        } catch (...) {
        }
        JsonError(res, 500, message);
      });
}

Server::~Server() { Stop(); }

bool Server::Listen(const std::string &host, int port) {
  return impl_->http.listen(host, port);
}

int Server::BindToAnyPort(const std::string &host) {
  return impl_->http.bind_to_any_port(host);
}

bool Server::Serve() { return impl_->http.listen_after_bind(); }

void Server::Stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

void Server::WaitUntilReady() const { impl_->http.wait_until_ready(); }

}  // namespace kblink::service
