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

#include <stdexcept>
#include <thread>

#include <httplib.h>

#include "mfee/service.hpp"

namespace mfee {

struct HttpServer::Impl {
  explicit Impl(MfeeService& service) : service(service) {
    server.Post("/gate", [this](const httplib::Request& req,
                                httplib::Response& res) {
      reply(res, this->service.handle_gate(req.body));
    });
    server.Post("/infer", [this](const httplib::Request& req,
                                 httplib::Response& res) {
      reply(res, this->service.handle_infer(req.body));
    });
    server.Post("/admin/killswitch", [this](const httplib::Request& req,
                                            httplib::Response& res) {
      reply(res, this->service.handle_admin_killswitch(req.body));
    });
    server.Get("/metrics",
               [this](const httplib::Request&, httplib::Response& res) {
                 reply(res, this->service.handle_metrics());
               });
  }

  static void reply(httplib::Response& res, const HandlerResult& result) {
    res.status = result.status;
    res.set_content(result.body, "application/json");
  }

  MfeeService& service;
  httplib::Server server;
  std::thread thread;
};

HttpServer::HttpServer(MfeeService& service)
    : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) {
      throw std::runtime_error("cannot bind an ephemeral port on " + host);
    }
  } else if (!impl_->server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" +
                             std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void HttpServer::stop() {
  impl_->server.stop();
  wait();
}

}  // namespace mfee
