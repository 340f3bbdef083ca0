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

#include <doctest.h>

#include <atomic>
#include <chrono>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "mfee/backend.hpp"
#include "mfee/remote_backend.hpp"

using namespace mfee;
using json = nlohmann::json;

namespace {

Request req(const std::string& id, const std::string& prompt) {
  Request r;
  r.request_id = id;
  r.prompt = prompt;
  r.model = "mfee-ref";
  r.max_tokens = 64;
  r.seed = 7;
  return r;
}

// In-process model server stub. The handler is swapped per test case.
class StubServer {
 public:
  explicit StubServer(httplib::Server::Handler handler) {
    server_.Post("/generate", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  int port() const { return port_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

RemoteBackendOptions options_for(int port, int max_in_flight = 8) {
  RemoteBackendOptions options;
  options.host = "127.0.0.1";
  options.port = port;
  options.timeout_seconds = 5;
  options.max_in_flight = max_in_flight;
  return options;
}

}  // namespace

TEST_CASE("remote backend round trips the wire contract") {
  std::string seen_body;
  StubServer server([&](const httplib::Request& http_req,
                        httplib::Response& http_res) {
    seen_body = http_req.body;
    const auto document = json::parse(http_req.body);
    const json reply = {{"request_id", document.at("request_id")},
                        {"output", "remote says hi"}};
    http_res.set_content(reply.dump(), "application/json");
  });

  RemoteBackend backend(options_for(server.port()));
  CHECK(backend.kind() == "remote");
  CHECK(backend.generate(req("w1", "Write a limerick.")) == "remote says hi");

  const auto sent = json::parse(seen_body);
  CHECK(sent.at("request_id") == "w1");
  CHECK(sent.at("prompt") == "Write a limerick.");
  CHECK(sent.at("model") == "mfee-ref");
  CHECK(sent.at("temperature").get<double>() == doctest::Approx(0.0));
  CHECK(sent.at("max_tokens").get<long long>() == 64);
  CHECK(sent.at("seed").get<long long>() == 7);
}

TEST_CASE("a response for the wrong request is an error, not an answer") {
  StubServer server([](const httplib::Request&, httplib::Response& http_res) {
    const json reply = {{"request_id", "someone-else"}, {"output", "x"}};
    http_res.set_content(reply.dump(), "application/json");
  });
  RemoteBackend backend(options_for(server.port()));
  CHECK_THROWS_AS(backend.generate(req("w2", "Hello")), BackendError);
}

TEST_CASE("non-200 statuses and junk bodies raise BackendError") {
  SUBCASE("http 500") {
    StubServer server([](const httplib::Request&, httplib::Response& http_res) {
      http_res.status = 500;
      http_res.set_content("backend on fire", "text/plain");
    });
    RemoteBackend backend(options_for(server.port()));
    CHECK_THROWS_AS(backend.generate(req("w3", "Hello")), BackendError);
  }
  SUBCASE("unparseable body") {
    StubServer server([](const httplib::Request&, httplib::Response& http_res) {
      http_res.set_content("not json", "application/json");
    });
    RemoteBackend backend(options_for(server.port()));
    CHECK_THROWS_AS(backend.generate(req("w4", "Hello")), BackendError);
  }
  SUBCASE("missing output field") {
    StubServer server([](const httplib::Request&, httplib::Response& http_res) {
      http_res.set_content(R"({"request_id":"w5"})", "application/json");
    });
    RemoteBackend backend(options_for(server.port()));
    CHECK_THROWS_AS(backend.generate(req("w5", "Hello")), BackendError);
  }
}

TEST_CASE("an unreachable server surfaces as BackendError") {
  RemoteBackendOptions options = options_for(1);  // nothing listens on port 1
  options.timeout_seconds = 1;
  RemoteBackend backend(options);
  CHECK_THROWS_AS(backend.generate(req("w6", "Hello")), BackendError);
}

TEST_CASE("in-flight cap serializes concurrent calls") {
  std::atomic<int> active{0};
  std::atomic<int> peak{0};
  StubServer server([&](const httplib::Request& http_req,
                        httplib::Response& http_res) {
    const int now = ++active;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(30));
    --active;
    const auto document = json::parse(http_req.body);
    const json reply = {{"request_id", document.at("request_id")},
                        {"output", "ok"}};
    http_res.set_content(reply.dump(), "application/json");
  });

  RemoteBackend backend(options_for(server.port(), /*max_in_flight=*/2));
  std::vector<std::thread> callers;
  std::atomic<int> successes{0};
  for (int i = 0; i < 6; ++i) {
    callers.emplace_back([&, i] {
      const std::string output =
          backend.generate(req("c" + std::to_string(i), "Hello"));
      if (output == "ok") ++successes;
    });
  }
  for (auto& caller : callers) caller.join();
  CHECK(successes == 6);
  CHECK(peak.load() <= 2);
}
