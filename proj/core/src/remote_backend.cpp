// Copyright 2026 The MFEE Authors
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

#include "mfee/remote_backend.hpp"

#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

namespace mfee {

namespace {
using nlohmann::json;
}  // namespace

// RAII hold on one in-flight slot.
class RemoteBackend::Slot {
 public:
  explicit Slot(RemoteBackend& owner) : owner_(owner) {
    std::unique_lock lock(owner_.mutex_);
    owner_.slot_free_.wait(lock, [&] {
      return owner_.in_flight_ < owner_.options_.max_in_flight;
    });
    ++owner_.in_flight_;
  }

  ~Slot() {
    {
      std::lock_guard lock(owner_.mutex_);
      --owner_.in_flight_;
    }
    owner_.slot_free_.notify_one();
  }

 private:
  RemoteBackend& owner_;
};

RemoteBackend::RemoteBackend(RemoteBackendOptions options)
    : options_(std::move(options)) {
  if (options_.max_in_flight <= 0) {
    throw std::invalid_argument("max_in_flight must be positive");
  }
  if (options_.timeout_seconds <= 0) {
    throw std::invalid_argument("timeout_seconds must be positive");
  }
}

RemoteBackend::~RemoteBackend() = default;

std::string RemoteBackend::generate(const Request& request) {
  Slot slot(*this);

  const json body = {
      {"request_id", request.request_id}, {"prompt", request.prompt},
      {"model", request.model},           {"temperature", request.temperature},
      {"max_tokens", request.max_tokens}, {"seed", request.seed},
  };

  httplib::Client client(options_.host, options_.port);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  client.set_write_timeout(options_.timeout_seconds);

  const httplib::Result result =
      client.Post(options_.path, body.dump(), "application/json");
  if (!result) {
    throw BackendError("remote backend unreachable: " +
                       httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw BackendError("remote backend returned status " +
                       std::to_string(result->status));
  }
  const json reply = json::parse(result->body, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("output")) {
    throw BackendError("remote backend reply is not the expected JSON");
  }
  if (reply.value("request_id", std::string()) != request.request_id) {
    throw BackendError("remote backend reply names a different request");
  }
  return reply.at("output").get<std::string>();
}

}  // namespace mfee
