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

// Command line front end for the MFEE control plane: replay generation,
// baseline capture, gated evaluation, router comparisons, the enumeration
// frontier check, temporal traces and the HTTP service.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfee/backend.hpp"
#include "mfee/baseline_routers.hpp"
#include "mfee/config.hpp"
#include "mfee/eval.hpp"
#include "mfee/fingerprint.hpp"
#include "mfee/gate.hpp"
#include "mfee/knowledge_base.hpp"
#include "mfee/pattern_router.hpp"
#include "mfee/remote_backend.hpp"
#include "mfee/replay.hpp"
#include "mfee/response_cache.hpp"
#include "mfee/safety.hpp"
#include "mfee/service.hpp"
#include "mfee/text.hpp"
#include "mfee/types.hpp"

#ifndef MFEE_FIXTURE_DIR
#define MFEE_FIXTURE_DIR "fixtures"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fixture(const char* name) {
  return (fs::path(MFEE_FIXTURE_DIR) / name).string();
}

// Shared --kb/--policy/--config options. Every subcommand that needs a gate
// takes the same trio so scripted runs stay uniform.
struct GateOptions {
  std::string kb_path = fixture("knowledge_base.tsv");
  std::string policy_path = fixture("safety_policy.tsv");
  std::string config_path;

  void attach(CLI::App& cmd) {
    cmd.add_option("--kb", kb_path, "Knowledge base TSV")
        ->capture_default_str();
    cmd.add_option("--policy", policy_path, "Safety policy TSV")
        ->capture_default_str();
    cmd.add_option("--config", config_path,
                   "key=value gate config file (direct_confidence_threshold, "
                   "latency_budget_ms, ...)");
  }

  mfee::GateConfig gate_config() const {
    mfee::KeyValueConfig kv = config_path.empty()
                                  ? mfee::KeyValueConfig()
                                  : mfee::KeyValueConfig::from_file(config_path);
    return mfee::GateConfig::from_config(kv);
  }
};

struct BackendOptions {
  std::string kind = "reference";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string path = "/generate";

  void attach(CLI::App& cmd) {
    cmd.add_option("--backend", kind, "Backend: reference or remote")
        ->check(CLI::IsMember({"reference", "remote"}))
        ->capture_default_str();
    cmd.add_option("--remote-host", host, "Remote backend host");
    cmd.add_option("--remote-port", port, "Remote backend port");
    cmd.add_option("--remote-path", path, "Remote backend POST path");
  }

  std::unique_ptr<mfee::Backend> make() const {
    if (kind == "remote") {
      mfee::RemoteBackendOptions options;
      options.host = host;
      options.port = port;
      options.path = path;
      return std::make_unique<mfee::RemoteBackend>(options);
    }
    return std::make_unique<mfee::ReferenceBackend>();
  }
};

// A gate plus everything it borrows. The gate holds raw pointers into this
// struct, so keep it alive for as long as the gate is used. Heap-allocated
// because the cache is pinned (it owns a mutex).
struct GateBundle {
  GateBundle(const GateOptions& options)
      : kb(mfee::KnowledgeBase::load(options.kb_path)),
        policy(mfee::SafetyPolicy::load(options.policy_path)),
        gate(options.gate_config(), &policy, &cache, &kb) {}

  mfee::KnowledgeBase kb;
  mfee::SafetyPolicy policy;
  mfee::ResponseCache cache;
  mfee::Gate gate;
};

std::unique_ptr<GateBundle> make_gate(const GateOptions& options) {
  return std::make_unique<GateBundle>(options);
}

// Seeds the gate cache and the cache-only router's seen map from a labeled
// file of previously served requests.
std::map<std::string, std::string> warm_from_seen(
    const std::string& path, mfee::ResponseCache& cache) {
  std::map<std::string, std::string> seen;
  for (const auto& labeled : mfee::routers::load_labeled_requests(path)) {
    if (!labeled.skip_response) continue;
    const std::string key = mfee::canonicalize(labeled.request.prompt);
    cache.store(key, mfee::config_fingerprint(labeled.request),
                *labeled.skip_response);
    seen[key] = *labeled.skip_response;
  }
  return seen;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    write_text(out_path, text);
  }
}

int run_gen_replay(const std::string& mix_spec, std::uint64_t seed,
                   const GateOptions& gate_options, const std::string& out) {
  const auto mix = mix_spec.empty() ? mfee::eval::CategoryMix::default_mix()
                                    : mfee::eval::CategoryMix::parse(mix_spec);
  const auto kb = mfee::KnowledgeBase::load(gate_options.kb_path);
  const auto policy = mfee::SafetyPolicy::load(gate_options.policy_path);
  const auto entries = mfee::eval::build_replay_set(mix, seed, kb, policy);
  mfee::eval::write_replay(out, entries);
  std::fprintf(stderr, "wrote %zu replay entries to %s\n", entries.size(),
               out.c_str());
  return 0;
}

int run_gen_baselines(const std::string& replay_path,
                      const BackendOptions& backend_options,
                      const std::string& out) {
  const auto entries = mfee::eval::read_replay(replay_path);
  auto backend = backend_options.make();
  const auto records = mfee::eval::generate_baselines(entries, *backend);
  mfee::eval::write_baselines(out, records);
  std::fprintf(stderr, "wrote %zu baselines to %s\n", records.size(),
               out.c_str());
  return 0;
}

int run_eval(const std::string& replay_path, const std::string& baselines_path,
             const GateOptions& gate_options,
             const BackendOptions& backend_options, const std::string& profile,
             const std::string& out_dir, const std::string& label) {
  const auto entries = mfee::eval::read_replay(replay_path);
  const auto baselines = mfee::eval::read_baselines(baselines_path);
  auto bundle = make_gate(gate_options);
  auto backend = backend_options.make();

  mfee::eval::RunOptions run_options;
  run_options.profile = profile == "9b" ? mfee::nine_b_scale_profile()
                                        : mfee::gpt2_scale_profile();
  const auto records = mfee::eval::run_replay(entries, baselines, bundle->gate,
                                              *backend, run_options);
  const auto report = mfee::eval::compute_metrics(records);

  const std::string text = mfee::eval::render_report_text(report);
  if (out_dir.empty()) {
    std::cout << text;
    return report.render_mismatches == 0 && report.pathway_violations == 0 ? 0
                                                                           : 1;
  }
  const fs::path run_dir = mfee::eval::make_run_directory(out_dir, label);
  mfee::eval::write_eval_records(run_dir / "records.jsonl", records);
  write_text((run_dir / "report.json").string(),
             mfee::eval::report_to_json(report));
  write_text((run_dir / "report.txt").string(), text);
  std::cout << text;
  std::fprintf(stderr, "run artifacts in %s\n", run_dir.string().c_str());
  return report.render_mismatches == 0 && report.pathway_violations == 0 ? 0
                                                                         : 1;
}

int run_compare_routers(const std::string& population_path,
                        const std::string& keyword_path,
                        const std::string& intent_path,
                        const std::string& seen_path,
                        const GateOptions& gate_options,
                        const std::string& out) {
  const auto population = mfee::routers::load_labeled_requests(population_path);
  auto bundle = make_gate(gate_options);
  const auto seen = warm_from_seen(seen_path, bundle->cache);

  const auto keyword = mfee::routers::KeywordRouter::load(keyword_path);
  const auto intent = mfee::routers::IntentRouter::load(intent_path);
  const mfee::routers::CacheOnlyRouter cache_only(seen, &bundle->policy);

  const auto comparison = mfee::eval::compare_routers(population, keyword,
                                                      cache_only, intent,
                                                      bundle->gate);
  std::cout << mfee::eval::render_comparison_text(comparison);
  if (!out.empty()) write_text(out, mfee::eval::comparison_to_json(comparison));
  return 0;
}

int run_frontier_check(const std::string& features_path,
                       const std::string& population_path,
                       const std::string& out) {
  const auto map = mfee::routers::FeatureMap::load(features_path);
  const auto population = mfee::routers::load_labeled_requests(population_path);
  const auto collisions = mfee::routers::find_collisions(population, map);
  const auto report = mfee::routers::enumerate_frontier(collisions, map,
                                                        population);

  json doc;
  doc["arity"] = report.arity;
  doc["tables_enumerated"] = report.tables_enumerated;
  doc["collisions"] = collisions.size();
  doc["hypothesis_met"] = report.hypothesis_met;
  doc["satisfying_tables"] = report.satisfying_tables;
  doc["zero_failure_max_avoidance"] = report.zero_failure_max_avoidance;
  json frontier = json::array();
  for (const auto& sample : report.frontier) {
    frontier.push_back({{"avoidance", sample.avoidance},
                        {"false_skips", sample.false_skips}});
  }
  doc["frontier"] = frontier;
  emit(out, doc.dump(2));
  return 0;
}

int run_temporal(const std::string& trace_path,
                 const GateOptions& gate_options,
                 const BackendOptions& backend_options,
                 const std::string& out) {
  const auto trace = mfee::eval::read_replay(trace_path);
  auto bundle = make_gate(gate_options);
  auto backend = backend_options.make();
  const auto report = mfee::eval::run_temporal(trace, bundle->gate, *backend);
  emit(out, mfee::eval::trace_report_to_json(report));
  return report.regressions == 0 ? 0 : 1;
}

std::atomic<mfee::HttpServer*> g_server{nullptr};

void handle_signal(int) {
  if (auto* server = g_server.load()) server->stop();
}

int run_serve(const GateOptions& gate_options,
              const BackendOptions& backend_options, const std::string& host,
              int port) {
  mfee::KeyValueConfig kv =
      gate_options.config_path.empty()
          ? mfee::KeyValueConfig()
          : mfee::KeyValueConfig::from_file(gate_options.config_path);
  mfee::ServiceConfig config = mfee::ServiceConfig::from_config(kv);
  if (!host.empty()) config.host = host;
  if (port >= 0) config.port = port;

  mfee::MfeeService service = mfee::MfeeService::from_files(
      config, gate_options.kb_path, gate_options.policy_path,
      backend_options.make());

  mfee::HttpServer server(service);
  const int bound = server.start(config.host, config.port);
  std::fprintf(stderr, "mfee service listening on %s:%d\n",
               config.host.c_str(), bound);
  g_server.store(&server);
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  server.wait();
  g_server.store(nullptr);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MFEE inference control plane"};
  app.require_subcommand(1);

  // gen-replay
  auto* gen = app.add_subcommand("gen-replay",
                                 "Generate a deterministic replay set");
  std::string gen_mix;
  std::uint64_t gen_seed = 7;
  std::string gen_out = "replay.jsonl";
  GateOptions gen_gate;
  gen->add_option("--mix", gen_mix,
                  "Category counts, e.g. factual=200,trivial=50 "
                  "(default: the standard 1000-entry mix)");
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output JSONL")->capture_default_str();
  gen_gate.attach(*gen);

  // gen-baselines
  auto* base = app.add_subcommand("gen-baselines",
                                  "Capture ungated baseline outputs");
  std::string base_replay, base_out = "baselines.jsonl";
  BackendOptions base_backend;
  base->add_option("--replay", base_replay, "Replay JSONL")->required();
  base->add_option("--out", base_out, "Output JSONL")->capture_default_str();
  base_backend.attach(*base);

  // eval
  auto* ev = app.add_subcommand("eval", "Gated replay against baselines");
  std::string ev_replay, ev_baselines, ev_out_dir, ev_label = "eval";
  std::string ev_profile = "gpt2";
  GateOptions ev_gate;
  BackendOptions ev_backend;
  ev->add_option("--replay", ev_replay, "Replay JSONL")->required();
  ev->add_option("--baselines", ev_baselines, "Baselines JSONL")->required();
  ev->add_option("--profile", ev_profile, "Latency profile: gpt2 or 9b")
      ->check(CLI::IsMember({"gpt2", "9b"}))
      ->capture_default_str();
  ev->add_option("--out-dir", ev_out_dir,
                 "Base directory for run artifacts (omit for stdout only)");
  ev->add_option("--label", ev_label, "Run directory label")
      ->capture_default_str();
  ev_gate.attach(*ev);
  ev_backend.attach(*ev);

  // compare-routers
  auto* cmp = app.add_subcommand("compare-routers",
                                 "Pattern baselines vs the gate");
  std::string cmp_population = fixture("adversarial_subset.jsonl");
  std::string cmp_keyword = fixture("keyword_rules.tsv");
  std::string cmp_intent = fixture("intent_patterns.tsv");
  std::string cmp_seen = fixture("adversarial_seen.jsonl");
  std::string cmp_out;
  GateOptions cmp_gate;
  cmp->add_option("--population", cmp_population, "Labeled requests JSONL")
      ->capture_default_str();
  cmp->add_option("--keyword-rules", cmp_keyword, "Keyword rule TSV")
      ->capture_default_str();
  cmp->add_option("--intent-patterns", cmp_intent, "Intent pattern TSV")
      ->capture_default_str();
  cmp->add_option("--seen", cmp_seen, "Previously served requests JSONL")
      ->capture_default_str();
  cmp->add_option("--out", cmp_out, "Write comparison JSON here");
  cmp_gate.attach(*cmp);

  // frontier-check
  auto* fr = app.add_subcommand("frontier-check",
                                "Enumerate all pattern routers over a "
                                "feature map");
  std::string fr_features, fr_population, fr_out;
  fr->add_option("--features", fr_features, "Feature map TSV")->required();
  fr->add_option("--population", fr_population, "Labeled requests JSONL")
      ->required();
  fr->add_option("--out", fr_out, "Write report JSON here");

  // temporal
  auto* tmp = app.add_subcommand("temporal", "Replay a timestamped trace");
  std::string tmp_trace = fixture("temporal_trace.jsonl");
  std::string tmp_out;
  GateOptions tmp_gate;
  BackendOptions tmp_backend;
  tmp->add_option("--trace", tmp_trace, "Trace JSONL")->capture_default_str();
  tmp->add_option("--out", tmp_out, "Write report JSON here");
  tmp_gate.attach(*tmp);
  tmp_backend.attach(*tmp);

  // serve
  auto* srv = app.add_subcommand("serve", "Run the HTTP service");
  std::string srv_host;
  int srv_port = -1;
  GateOptions srv_gate;
  BackendOptions srv_backend;
  srv->add_option("--host", srv_host, "Bind host (overrides config)");
  srv->add_option("--port", srv_port, "Bind port (0 = ephemeral)");
  srv_gate.attach(*srv);
  srv_backend.attach(*srv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_gen_replay(gen_mix, gen_seed, gen_gate, gen_out);
    if (base->parsed())
      return run_gen_baselines(base_replay, base_backend, base_out);
    if (ev->parsed())
      return run_eval(ev_replay, ev_baselines, ev_gate, ev_backend, ev_profile,
                      ev_out_dir, ev_label);
    if (cmp->parsed())
      return run_compare_routers(cmp_population, cmp_keyword, cmp_intent,
                                 cmp_seen, cmp_gate, cmp_out);
    if (fr->parsed()) return run_frontier_check(fr_features, fr_population, fr_out);
    if (tmp->parsed())
      return run_temporal(tmp_trace, tmp_gate, tmp_backend, tmp_out);
    if (srv->parsed())
      return run_serve(srv_gate, srv_backend, srv_host, srv_port);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
