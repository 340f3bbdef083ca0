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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfee/backend.hpp"
#include "mfee/baseline_routers.hpp"
#include "mfee/gate.hpp"
#include "mfee/replay.hpp"
#include "mfee/types.hpp"

namespace mfee::eval {

// Frozen expected output for one request, captured by running the backend
// unconditionally before any gated run.
struct BaselineRecord {
  std::string request_id;
  std::string prompt;
  double temperature = 0.0;
  long long seed = kDefaultSeed;
  std::string baseline_output;
  std::string timestamp;  // ISO 8601 UTC
};

// Runs the backend over every entry. Any backend failure aborts the whole
// capture (throws, naming the request) because a partial baseline set would
// silently shrink the equivalence check.
std::vector<BaselineRecord> generate_baselines(
    const std::vector<ReplayEntry>& entries, Backend& backend);

void write_baselines(const std::filesystem::path& path,
                     const std::vector<BaselineRecord>& records);
std::vector<BaselineRecord> read_baselines(const std::filesystem::path& path);

// Outcome of one gated replay request, with its validation verdict.
struct EvalRecord {
  std::string request_id;
  Category category = Category::kMixed;
  Decision decision = Decision::kRender;
  std::optional<ProofTag> proof_tag;
  std::optional<RenderReason> render_reason;
  std::string output;
  // Byte equality against the stored baseline; present iff RENDER.
  std::optional<bool> exact_match;
  double gate_latency_ms = 0.0;
  std::optional<double> exec_latency_ms;  // RENDER only (simulated)
  // Bounded decisions: the pathway-specific recomputation described in
  // run_replay. Always true for RENDER records.
  bool pathway_valid = true;
  std::optional<std::string> validation_note;
};

struct RunOptions {
  LatencyProfile profile = gpt2_scale_profile();
};

// Replays entries through the gate in order. RENDER executes the backend
// and byte-compares against the stored baseline. Bounded decisions are
// validated without trusting the gate: cache hits against the stored cache
// value, deterministic answers by re-solving, KB answers by re-reading,
// NO_OP by re-running triage, ABSTAIN by re-evaluating the policy. The
// response cache starts empty and is warmed only by this run's RENDER
// outputs. Throws when a RENDER entry has no baseline.
std::vector<EvalRecord> run_replay(const std::vector<ReplayEntry>& entries,
                                   const std::vector<BaselineRecord>& baselines,
                                   const Gate& gate, Backend& backend,
                                   const RunOptions& options = {});

// Nearest-rank percentile; values need not be sorted. p in (0, 100].
double nearest_rank_percentile(std::vector<double> values, double p);

struct LatencyStats {
  std::size_t count = 0;
  double p50 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

LatencyStats latency_stats(const std::vector<double>& values);

struct CategoryBreakdown {
  std::size_t total = 0;
  std::size_t rendered = 0;

  double render_rate() const {
    return total == 0 ? 0.0 : static_cast<double>(rendered) / total;
  }
};

struct RouterComparison {
  std::vector<routers::FrontierPoint> points;
};

struct EvalReport {
  std::size_t total = 0;
  std::map<Decision, std::size_t> decision_counts;
  double execution_reduction = 0.0;  // 1 - RENDER/total
  double exact_match_rate = 1.0;     // matched RENDERs / RENDERs; 1.0 if none
  std::size_t render_mismatches = 0;
  std::size_t pathway_violations = 0;
  std::map<Category, CategoryBreakdown> categories;
  std::map<RenderReason, std::size_t> render_reasons;
  std::map<ProofTag, std::size_t> proof_tags;
  LatencyStats gate_latency;
  LatencyStats exec_latency;  // simulated, RENDER only
  // Filled when a router comparison ran alongside the replay.
  std::optional<RouterComparison> frontier;
};

// Aggregates records into the report. Throws on an empty run. All figures
// are programmatic; nothing here is hand-scored.
EvalReport compute_metrics(const std::vector<EvalRecord>& records);

// Evaluates the three pattern baselines and the gate over one labeled
// population (typically the adversarial subset).
RouterComparison compare_routers(
    const std::vector<routers::LabeledRequest>& population,
    const routers::KeywordRouter& keyword,
    const routers::CacheOnlyRouter& cache_only,
    const routers::IntentRouter& intent, const Gate& gate);

// Temporal-trace replay over a support-desk style request log.
struct TraceReport {
  std::size_t entries = 0;
  std::size_t baseline_calls = 0;  // unique requests a gateless system executes
  std::size_t gated_calls = 0;     // RENDER decisions under the gate
  std::size_t avoided_calls = 0;
  double avoidance = 0.0;
  std::size_t regressions = 0;  // bounded responses that fail validation,
                                // plus RENDER outputs differing from baseline
  std::map<Decision, std::size_t> decision_counts;
};

// Requires entries ordered by timestamp (throws otherwise). The cache
// starts cold; repeats of rendered requests are expected to become hits.
TraceReport run_temporal(const std::vector<ReplayEntry>& trace,
                         const Gate& gate, Backend& backend);

// Report emission: a timestamped directory containing records.jsonl,
// report.json and report.txt (human-readable table).
std::filesystem::path make_run_directory(const std::filesystem::path& base,
                                         std::string_view label);
void write_eval_records(const std::filesystem::path& path,
                        const std::vector<EvalRecord>& records);
std::string render_report_text(const EvalReport& report);
std::string report_to_json(const EvalReport& report);
std::string comparison_to_json(const RouterComparison& comparison);
std::string render_comparison_text(const RouterComparison& comparison);
std::string trace_report_to_json(const TraceReport& report);

std::string iso8601_utc_now();

}  // namespace mfee::eval
