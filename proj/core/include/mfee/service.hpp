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

#include <atomic>
#include <chrono>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mfee/backend.hpp"
#include "mfee/config.hpp"
#include "mfee/gate.hpp"
#include "mfee/knowledge_base.hpp"
#include "mfee/response_cache.hpp"
#include "mfee/safety.hpp"
#include "mfee/types.hpp"

namespace mfee {

// Why the service reverted to unconditional execution.
enum class KillSwitchTrigger : std::uint8_t {
  kEquivalenceViolation,
  kQualityThreshold,
  kLatencyBreach,
  kInternalError,
  kManual,
};

std::string_view to_string(KillSwitchTrigger trigger);
std::optional<KillSwitchTrigger> kill_switch_trigger_from_string(
    std::string_view name);

struct KillSwitchEvent {
  std::string action;  // "engage" or "reset"
  std::string reason;
  std::string timestamp;  // ISO 8601 UTC
};

// One atomic cell read on every request's hot path. Any trigger engages it;
// only an explicit reset disengages. Every transition is kept in history.
class KillSwitch {
 public:
  bool engaged() const { return engaged_.load(std::memory_order_acquire); }

  void engage(KillSwitchTrigger trigger);
  void reset();

  std::optional<KillSwitchTrigger> reason() const;
  std::vector<KillSwitchEvent> history() const;

 private:
  std::atomic<bool> engaged_{false};
  mutable std::mutex mutex_;
  std::optional<KillSwitchTrigger> reason_;
  std::vector<KillSwitchEvent> history_;
};

struct ServiceConfig {
  GateConfig gate;
  // Fraction of RENDER responses regenerated and byte-compared before the
  // next request is admitted. One mismatch engages the kill switch.
  double equivalence_sample_rate = 0.05;
  std::uint64_t sampler_seed = 24049;
  // Alarm condition: rolling-window gate p95 above factor x latency budget.
  double latency_breach_factor = 4.0;
  std::size_t latency_window = 1000;
  std::size_t latency_min_samples = 20;
  std::size_t cache_capacity = kDefaultCacheCapacity;
  bool kill_switch_at_boot = false;
  std::string host = "127.0.0.1";
  int port = 8080;

  // Reads gate.* plus the service keys (equivalence_sample_rate,
  // latency_breach_factor, latency_window, latency_min_samples,
  // cache_capacity, kill_switch, host, port, sampler_seed). Environment
  // variables override file values: MFEE_KILL_SWITCH=1 boots engaged.
  static ServiceConfig from_config(const KeyValueConfig& kv);

  void validate() const;
};

// Point-in-time copy of the monitoring state.
struct MetricsSnapshot {
  std::size_t requests = 0;  // requests that received a decision
  std::map<Decision, std::size_t> decision_counts;
  std::size_t bypass_responses = 0;
  std::size_t equivalence_checks = 0;
  std::size_t equivalence_failures = 0;
  bool kill_switch_engaged = false;
  std::optional<KillSwitchTrigger> kill_switch_reason;
  // (upper bound ms, count) pairs; the last bucket is unbounded.
  std::vector<std::pair<double, std::size_t>> gate_latency_histogram;
  std::vector<std::pair<double, std::size_t>> backend_latency_histogram;
  double window_gate_p95_ms = 0.0;  // 0 until latency_min_samples seen
  std::size_t cache_size = 0;
  double uptime_seconds = 0.0;
};

// Status plus JSON body, transport-agnostic. The HTTP front end only maps
// routes onto these handlers, so the full service behavior is testable
// without opening a socket.
struct HandlerResult {
  int status = 200;
  std::string body;
};

// The deployable control plane: gate API, end-to-end inference, kill-switch
// state machine and monitoring counters.
class MfeeService {
 public:
  MfeeService(ServiceConfig config, KnowledgeBase kb, SafetyPolicy policy,
              std::unique_ptr<Backend> backend);

  // Convenience constructor loading the fixture files.
  static MfeeService from_files(ServiceConfig config,
                                const std::filesystem::path& kb_path,
                                const std::filesystem::path& policy_path,
                                std::unique_ptr<Backend> backend);

  MfeeService(const MfeeService&) = delete;
  MfeeService& operator=(const MfeeService&) = delete;

  // POST /gate: body {request_id, prompt, model, temperature, max_tokens};
  // reply {decision, confidence, direct_output?}. While the kill switch is
  // engaged every reply is RENDER at confidence 1.0 without gating.
  HandlerResult handle_gate(const std::string& body);

  // POST /infer: gate body plus seed; reply {request_id, decision, output,
  // gate_latency_ms, exec_latency_ms?}. RENDER outputs are cached for
  // future DIRECT hits. While engaged the backend runs unconditionally and
  // nothing is gated or cached.
  HandlerResult handle_infer(const std::string& body);

  // POST /admin/killswitch: {action: engage|reset, reason?}.
  HandlerResult handle_admin_killswitch(const std::string& body);

  // GET /metrics.
  HandlerResult handle_metrics() const;

  MetricsSnapshot metrics_snapshot() const;
  KillSwitch& kill_switch() { return kill_switch_; }
  const Gate& gate() const { return gate_; }
  const ServiceConfig& config() const { return config_; }

 private:
  struct GateEvaluation {
    GateOutcome outcome;
    std::string canonical_key;
    double gate_latency_ms = 0.0;
    bool bypassed = false;
  };

  GateEvaluation evaluate_or_bypass(const Request& request);
  void record_decision(const GateEvaluation& evaluation);
  void record_backend_latency(double ms);
  void check_latency_breach(double gate_ms);
  bool should_sample_equivalence();

  ServiceConfig config_;
  KnowledgeBase kb_;
  SafetyPolicy policy_;
  ResponseCache cache_;
  std::unique_ptr<Backend> backend_;
  Gate gate_;  // depends on kb_/policy_/cache_; keep declared after them
  KillSwitch kill_switch_;

  mutable std::mutex metrics_mutex_;
  std::size_t requests_ = 0;
  std::map<Decision, std::size_t> decision_counts_;
  std::size_t bypass_responses_ = 0;
  std::size_t equivalence_checks_ = 0;
  std::size_t equivalence_failures_ = 0;
  std::vector<std::size_t> gate_histogram_;
  std::vector<std::size_t> backend_histogram_;
  std::deque<double> gate_window_;
  std::mt19937_64 sampler_;
  std::chrono::steady_clock::time_point started_;
};

// HTTP front end over a MfeeService. Runs the listener on its own thread;
// start() returns the bound port (pass port 0 for an ephemeral one).
class HttpServer {
 public:
  explicit HttpServer(MfeeService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Throws std::runtime_error when the port cannot be bound.
  int start(const std::string& host, int port);
  // Blocks until stop() is called from another thread.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mfee
