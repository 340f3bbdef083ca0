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

#pragma once

#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>

#include "mfee/backend.hpp"

namespace mfee {

struct RemoteBackendOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string path = "/generate";
  int timeout_seconds = 30;
  // Upper bound on concurrent in-flight generate calls; extra callers block.
  int max_in_flight = 8;
};

// Adapter for a real temperature-0 model server. Wire contract: POST a JSON
// body {request_id, prompt, model, temperature, max_tokens, seed} and expect
// {request_id, output} back. Any transport failure, non-200 status, body
// parse failure or request_id mismatch throws BackendError; the gate's
// conservative default means such failures surface as errors to the caller
// rather than as silently substituted text.
class RemoteBackend final : public Backend {
 public:
  explicit RemoteBackend(RemoteBackendOptions options);
  ~RemoteBackend() override;

  RemoteBackend(const RemoteBackend&) = delete;
  RemoteBackend& operator=(const RemoteBackend&) = delete;

  std::string generate(const Request& request) override;
  std::string_view kind() const override { return "remote"; }

 private:
  class Slot;

  RemoteBackendOptions options_;
  std::mutex mutex_;
  std::condition_variable slot_free_;
  int in_flight_ = 0;
};

}  // namespace mfee
