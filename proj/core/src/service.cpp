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

#include "mfee/service.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "mfee/dispatch.hpp"
#include "mfee/fingerprint.hpp"

namespace mfee {

namespace {

using nlohmann::json;

// Fixed bucket upper bounds in milliseconds; one unbounded bucket follows.
const std::vector<double>& gate_bucket_bounds() {
  static const std::vector<double> bounds = {0.5, 1.0, 2.0, 4.0,
                                             8.0, 16.0, 32.0};
  return bounds;
}

const std::vector<double>& backend_bucket_bounds() {
  static const std::vector<double> bounds = {1.0, 5.0, 25.0,
                                             100.0, 400.0, 1600.0};
  return bounds;
}

void observe(std::vector<std::size_t>& histogram,
             const std::vector<double>& bounds, double value) {
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (value <= bounds[i]) {
      ++histogram[i];
      return;
    }
  }
  ++histogram.back();
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return stamp;
}

HandlerResult client_error(const std::string& field,
                           const std::string& message) {
  const json body = {{"error", {{"field", field}, {"message", message}}}};
  return {400, body.dump()};
}

HandlerResult server_error(const std::string& field,
                           const std::string& message) {
  const json body = {{"error", {{"field", field}, {"message", message}}}};
  return {502, body.dump()};
}

// Extracts the request document. The gate endpoint's schema has no seed
// field, so the protocol default applies there; /infer may carry one.
bool parse_request_body(const std::string& body, bool allow_seed,
                        Request& request, HandlerResult& error) {
  const json document = json::parse(body, nullptr, false);
  if (document.is_discarded() || !document.is_object()) {
    error = client_error("body", "request body is not a JSON object");
    return false;
  }
  RawRequest raw;
  try {
    for (const char* field :
         {"request_id", "prompt", "model", "temperature", "max_tokens"}) {
      if (!document.contains(field)) {
        error = client_error(field, "required field is missing");
        return false;
      }
    }
    raw.request_id = document.at("request_id").get<std::string>();
    raw.prompt = document.at("prompt").get<std::string>();
    raw.model = document.at("model").get<std::string>();
    raw.temperature = document.at("temperature").get<double>();
    raw.max_tokens = document.at("max_tokens").get<long long>();
    if (allow_seed && document.contains("seed")) {
      raw.seed = document.at("seed").get<long long>();
    }
  } catch (const json::exception& e) {
    error = client_error("body", std::string("malformed field: ") + e.what());
    return false;
  }
  try {
    request = validate_request(raw);
  } catch (const ValidationError& e) {
    error = client_error(e.field(), e.what());
    return false;
  }
  return true;
}

json history_to_json(const std::vector<KillSwitchEvent>& history) {
  json events = json::array();
  for (const KillSwitchEvent& event : history) {
    events.push_back({{"action", event.action},
                      {"reason", event.reason},
                      {"timestamp", event.timestamp}});
  }
  return events;
}

json histogram_to_json(
    const std::vector<std::pair<double, std::size_t>>& buckets) {
  json array = json::array();
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    json bucket = {{"count", buckets[i].second}};
    if (i + 1 == buckets.size()) {
      bucket["le_ms"] = nullptr;
    } else {
      bucket["le_ms"] = buckets[i].first;
    }
    array.push_back(bucket);
  }
  return array;
}

}  // namespace

std::string_view to_string(KillSwitchTrigger trigger) {
  switch (trigger) {
    case KillSwitchTrigger::kEquivalenceViolation:
      return "equivalence_violation";
    case KillSwitchTrigger::kQualityThreshold:
      return "quality_threshold";
    case KillSwitchTrigger::kLatencyBreach:
      return "latency_breach";
    case KillSwitchTrigger::kInternalError:
      return "internal_error";
    case KillSwitchTrigger::kManual:
      return "manual";
  }
  return "manual";
}

std::optional<KillSwitchTrigger> kill_switch_trigger_from_string(
    std::string_view name) {
  if (name == "equivalence_violation")
    return KillSwitchTrigger::kEquivalenceViolation;
  if (name == "quality_threshold") return KillSwitchTrigger::kQualityThreshold;
  if (name == "latency_breach") return KillSwitchTrigger::kLatencyBreach;
  if (name == "internal_error") return KillSwitchTrigger::kInternalError;
  if (name == "manual") return KillSwitchTrigger::kManual;
  return std::nullopt;
}

void KillSwitch::engage(KillSwitchTrigger trigger) {
  std::lock_guard lock(mutex_);
  // Engaging twice is idempotent for state; history still records it.
  engaged_.store(true, std::memory_order_release);
  reason_ = trigger;
  history_.push_back({"engage", std::string(to_string(trigger)), utc_now()});
}

void KillSwitch::reset() {
  std::lock_guard lock(mutex_);
  engaged_.store(false, std::memory_order_release);
  reason_.reset();
  history_.push_back({"reset", "operator", utc_now()});
}

std::optional<KillSwitchTrigger> KillSwitch::reason() const {
  std::lock_guard lock(mutex_);
  return reason_;
}

std::vector<KillSwitchEvent> KillSwitch::history() const {
  std::lock_guard lock(mutex_);
  return history_;
}

ServiceConfig ServiceConfig::from_config(const KeyValueConfig& kv) {
  ServiceConfig config;
  config.gate = GateConfig::from_config(kv);
  config.equivalence_sample_rate =
      kv.get_double("equivalence_sample_rate", config.equivalence_sample_rate);
  config.sampler_seed = static_cast<std::uint64_t>(
      kv.get_int("sampler_seed", static_cast<long long>(config.sampler_seed)));
  config.latency_breach_factor =
      kv.get_double("latency_breach_factor", config.latency_breach_factor);
  config.latency_window = static_cast<std::size_t>(
      kv.get_int("latency_window", static_cast<long long>(config.latency_window)));
  config.latency_min_samples = static_cast<std::size_t>(kv.get_int(
      "latency_min_samples", static_cast<long long>(config.latency_min_samples)));
  config.cache_capacity = static_cast<std::size_t>(kv.get_int(
      "cache_capacity", static_cast<long long>(config.cache_capacity)));
  config.kill_switch_at_boot = kv.get_bool("kill_switch", false);
  config.host = kv.get_or("host", config.host);
  config.port = static_cast<int>(kv.get_int("port", config.port));
  config.validate();
  return config;
}

void ServiceConfig::validate() const {
  gate.validate();
  if (equivalence_sample_rate < 0.0 || equivalence_sample_rate > 1.0) {
    throw std::invalid_argument("equivalence_sample_rate must be in [0,1]");
  }
  if (latency_breach_factor <= 0.0) {
    throw std::invalid_argument("latency_breach_factor must be positive");
  }
  if (latency_window == 0 || latency_min_samples == 0) {
    throw std::invalid_argument("latency window sizes must be positive");
  }
  if (cache_capacity == 0) {
    throw std::invalid_argument("cache_capacity must be positive");
  }
  if (port < 0 || port > 65535) {
    throw std::invalid_argument("port out of range");
  }
}

MfeeService::MfeeService(ServiceConfig config, KnowledgeBase kb,
                         SafetyPolicy policy, std::unique_ptr<Backend> backend)
    : config_(std::move(config)),
      kb_(std::move(kb)),
      policy_(std::move(policy)),
      cache_(config_.cache_capacity),
      backend_(std::move(backend)),
      gate_(config_.gate, &policy_, &cache_, &kb_),
      gate_histogram_(gate_bucket_bounds().size() + 1, 0),
      backend_histogram_(backend_bucket_bounds().size() + 1, 0),
      sampler_(config_.sampler_seed),
      started_(std::chrono::steady_clock::now()) {
  if (!backend_) {
    throw std::invalid_argument("service needs a backend");
  }
  config_.validate();
  if (config_.kill_switch_at_boot) {
    kill_switch_.engage(KillSwitchTrigger::kManual);
  }
}

MfeeService MfeeService::from_files(ServiceConfig config,
                                    const std::filesystem::path& kb_path,
                                    const std::filesystem::path& policy_path,
                                    std::unique_ptr<Backend> backend) {
  return MfeeService(std::move(config), KnowledgeBase::load(kb_path),
                     SafetyPolicy::load(policy_path), std::move(backend));
}

MfeeService::GateEvaluation MfeeService::evaluate_or_bypass(
    const Request& request) {
  GateEvaluation evaluation;
  if (kill_switch_.engaged()) {
    evaluation.outcome.decision = Decision::kRender;
    evaluation.outcome.confidence = 1.0;
    evaluation.outcome.render_reason = RenderReason::kNoPathway;
    evaluation.bypassed = true;
    return evaluation;
  }
  const GateResult result = gate_.evaluate(request);
  evaluation.outcome = result.outcome;
  evaluation.canonical_key = result.canonical_key;
  evaluation.gate_latency_ms = result.gate_latency_ms();
  return evaluation;
}

void MfeeService::record_decision(const GateEvaluation& evaluation) {
  std::lock_guard lock(metrics_mutex_);
  ++requests_;
  ++decision_counts_[evaluation.outcome.decision];
  if (evaluation.bypassed) {
    ++bypass_responses_;
    return;
  }
  observe(gate_histogram_, gate_bucket_bounds(), evaluation.gate_latency_ms);
  gate_window_.push_back(evaluation.gate_latency_ms);
  while (gate_window_.size() > config_.latency_window) {
    gate_window_.pop_front();
  }
}

void MfeeService::record_backend_latency(double ms) {
  std::lock_guard lock(metrics_mutex_);
  observe(backend_histogram_, backend_bucket_bounds(), ms);
}

// Alarm check over the rolling window; needs a minimum sample count so a
// single cold-start outlier cannot flip production to bypass mode.
void MfeeService::check_latency_breach(double gate_ms) {
  (void)gate_ms;
  double p95 = 0.0;
  {
    std::lock_guard lock(metrics_mutex_);
    if (gate_window_.size() < config_.latency_min_samples) return;
    std::vector<double> window(gate_window_.begin(), gate_window_.end());
    std::sort(window.begin(), window.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(window.size())));
    p95 = window[std::min(rank, window.size()) - 1];
  }
  if (p95 > config_.latency_breach_factor * config_.gate.latency_budget_ms) {
    kill_switch_.engage(KillSwitchTrigger::kLatencyBreach);
  }
}

bool MfeeService::should_sample_equivalence() {
  if (config_.equivalence_sample_rate <= 0.0) return false;
  if (config_.equivalence_sample_rate >= 1.0) return true;
  std::lock_guard lock(metrics_mutex_);
  const double draw =
      static_cast<double>(sampler_() % 1000000) / 1000000.0;
  return draw < config_.equivalence_sample_rate;
}

HandlerResult MfeeService::handle_gate(const std::string& body) {
  Request request;
  HandlerResult error;
  if (!parse_request_body(body, /*allow_seed=*/false, request, error)) {
    return error;
  }
  const GateEvaluation evaluation = evaluate_or_bypass(request);
  record_decision(evaluation);
  if (!evaluation.bypassed) check_latency_breach(evaluation.gate_latency_ms);

  json reply = {
      {"decision", std::string(to_string(evaluation.outcome.decision))},
      {"confidence", evaluation.outcome.confidence},
  };
  if (evaluation.outcome.direct_output) {
    reply["direct_output"] = *evaluation.outcome.direct_output;
  }
  return {200, reply.dump()};
}

HandlerResult MfeeService::handle_infer(const std::string& body) {
  Request request;
  HandlerResult error;
  if (!parse_request_body(body, /*allow_seed=*/true, request, error)) {
    return error;
  }
  const GateEvaluation evaluation = evaluate_or_bypass(request);

  std::string output;
  std::optional<double> exec_latency_ms;
  if (evaluation.outcome.decision == Decision::kRender) {
    const auto exec_start = std::chrono::steady_clock::now();
    try {
      output = backend_->generate(request);
    } catch (const std::exception& e) {
      kill_switch_.engage(KillSwitchTrigger::kInternalError);
      return server_error("backend", e.what());
    }
    exec_latency_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - exec_start)
            .count();
    record_backend_latency(*exec_latency_ms);

    if (!evaluation.bypassed) {
      // Sampled equivalence audit, synchronous by design: a mismatch must
      // engage the switch before any later request is gated.
      if (should_sample_equivalence()) {
        bool matches = false;
        try {
          matches = backend_->generate(request) == output;
        } catch (const std::exception&) {
          matches = false;
        }
        {
          std::lock_guard lock(metrics_mutex_);
          ++equivalence_checks_;
          if (!matches) ++equivalence_failures_;
        }
        if (!matches) {
          kill_switch_.engage(KillSwitchTrigger::kEquivalenceViolation);
        }
      }
      cache_.store(evaluation.canonical_key, config_fingerprint(request),
                   output);
    }
  } else {
    try {
      output = dispatch(evaluation.outcome, request, *backend_).text;
    } catch (const std::exception& e) {
      kill_switch_.engage(KillSwitchTrigger::kInternalError);
      return server_error("dispatch", e.what());
    }
  }

  record_decision(evaluation);
  if (!evaluation.bypassed) check_latency_breach(evaluation.gate_latency_ms);

  json reply = {
      {"request_id", request.request_id},
      {"decision", std::string(to_string(evaluation.outcome.decision))},
      {"output", output},
      {"gate_latency_ms", evaluation.gate_latency_ms},
  };
  if (exec_latency_ms) reply["exec_latency_ms"] = *exec_latency_ms;
  return {200, reply.dump()};
}

HandlerResult MfeeService::handle_admin_killswitch(const std::string& body) {
  const json document = json::parse(body, nullptr, false);
  if (document.is_discarded() || !document.is_object() ||
      !document.contains("action")) {
    return client_error("action", "body needs an action of engage or reset");
  }
  const std::string action = document.value("action", std::string());
  if (action == "engage") {
    KillSwitchTrigger trigger = KillSwitchTrigger::kManual;
    if (document.contains("reason")) {
      const std::string reason = document.at("reason").get<std::string>();
      const auto parsed = kill_switch_trigger_from_string(reason);
      if (!parsed) return client_error("reason", "unknown trigger: " + reason);
      trigger = *parsed;
    }
    kill_switch_.engage(trigger);
  } else if (action == "reset") {
    kill_switch_.reset();
  } else {
    return client_error("action", "action must be engage or reset");
  }

  json reply = {{"engaged", kill_switch_.engaged()}};
  if (const auto reason = kill_switch_.reason()) {
    reply["reason"] = std::string(to_string(*reason));
  }
  reply["history"] = history_to_json(kill_switch_.history());
  return {200, reply.dump()};
}

MetricsSnapshot MfeeService::metrics_snapshot() const {
  MetricsSnapshot snapshot;
  {
    std::lock_guard lock(metrics_mutex_);
    snapshot.requests = requests_;
    snapshot.decision_counts = decision_counts_;
    snapshot.bypass_responses = bypass_responses_;
    snapshot.equivalence_checks = equivalence_checks_;
    snapshot.equivalence_failures = equivalence_failures_;
    const auto& gate_bounds = gate_bucket_bounds();
    for (std::size_t i = 0; i < gate_histogram_.size(); ++i) {
      const double bound =
          i < gate_bounds.size() ? gate_bounds[i] : std::numeric_limits<double>::infinity();
      snapshot.gate_latency_histogram.emplace_back(bound, gate_histogram_[i]);
    }
    const auto& backend_bounds = backend_bucket_bounds();
    for (std::size_t i = 0; i < backend_histogram_.size(); ++i) {
      const double bound = i < backend_bounds.size()
                               ? backend_bounds[i]
                               : std::numeric_limits<double>::infinity();
      snapshot.backend_latency_histogram.emplace_back(bound,
                                                      backend_histogram_[i]);
    }
    if (gate_window_.size() >= config_.latency_min_samples) {
      std::vector<double> window(gate_window_.begin(), gate_window_.end());
      std::sort(window.begin(), window.end());
      const auto rank = static_cast<std::size_t>(
          std::ceil(0.95 * static_cast<double>(window.size())));
      snapshot.window_gate_p95_ms = window[std::min(rank, window.size()) - 1];
    }
  }
  snapshot.kill_switch_engaged = kill_switch_.engaged();
  snapshot.kill_switch_reason = kill_switch_.reason();
  snapshot.cache_size = cache_.size();
  snapshot.uptime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started_)
          .count();
  return snapshot;
}

HandlerResult MfeeService::handle_metrics() const {
  const MetricsSnapshot snapshot = metrics_snapshot();
  json decisions = json::object();
  for (const Decision decision :
       {Decision::kRender, Decision::kDirect, Decision::kNoOp,
        Decision::kAbstain}) {
    const auto it = snapshot.decision_counts.find(decision);
    decisions[std::string(to_string(decision))] =
        it == snapshot.decision_counts.end() ? 0 : it->second;
  }
  json kill_switch = {{"engaged", snapshot.kill_switch_engaged}};
  if (snapshot.kill_switch_reason) {
    kill_switch["reason"] = std::string(to_string(*snapshot.kill_switch_reason));
  }
  const json reply = {
      {"requests", snapshot.requests},
      {"decisions", decisions},
      {"bypass_responses", snapshot.bypass_responses},
      {"equivalence",
       {{"checks", snapshot.equivalence_checks},
        {"failures", snapshot.equivalence_failures}}},
      {"kill_switch", kill_switch},
      {"gate_latency_histogram",
       histogram_to_json(snapshot.gate_latency_histogram)},
      {"backend_latency_histogram",
       histogram_to_json(snapshot.backend_latency_histogram)},
      {"window_gate_p95_ms", snapshot.window_gate_p95_ms},
      {"cache_size", snapshot.cache_size},
      {"uptime_seconds", snapshot.uptime_seconds},
  };
  return {200, reply.dump()};
}

}  // namespace mfee
