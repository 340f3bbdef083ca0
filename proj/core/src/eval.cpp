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

#include "mfee/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "eval_internal.hpp"
#include "mfee/dispatch.hpp"
#include "mfee/fingerprint.hpp"
#include "mfee/hash.hpp"
#include "mfee/solver.hpp"
#include "mfee/text.hpp"

namespace mfee::eval {

namespace detail {

std::string shadow_key(const std::string& canonical, const Request& request) {
  return canonical + '\x1f' + hex16(config_fingerprint(request));
}

Verdict validate_bounded(
    const Gate& gate, const Request& request, const GateResult& result,
    const std::string& output,
    const std::unordered_map<std::string, std::string>& shadow) {
  switch (result.outcome.decision) {
    case Decision::kDirect: {
      if (!result.outcome.proof_tag) {
        return {false, "direct without proof tag"};
      }
      switch (*result.outcome.proof_tag) {
        case ProofTag::kCacheHit: {
          const auto it = shadow.find(shadow_key(result.canonical_key, request));
          if (it == shadow.end()) {
            return {false, "cache hit with no previously rendered output"};
          }
          if (it->second != output) {
            return {false, "cache hit differs from rendered output"};
          }
          return {};
        }
        case ProofTag::kDeterministicRule: {
          const auto solved = solve_canonical(result.canonical_key);
          if (!solved) return {false, "solver cannot reproduce the answer"};
          if (*solved != output) return {false, "solver answer differs"};
          return {};
        }
        case ProofTag::kKbLookup: {
          const KnowledgeBase* kb = gate.knowledge_base();
          if (!kb) return {false, "kb answer without a knowledge base"};
          const auto entry = kb->lookup(result.canonical_key);
          if (!entry) return {false, "kb key not found on re-read"};
          if (*entry != output) return {false, "kb answer differs"};
          return {};
        }
      }
      return {false, "unknown proof tag"};
    }
    case Decision::kNoOp: {
      if (!structural_triage(request.prompt, gate.config()).malformed) {
        return {false, "no-op on a well-formed prompt"};
      }
      if (!output.empty()) return {false, "no-op with non-empty output"};
      return {};
    }
    case Decision::kAbstain: {
      const SafetyPolicy* policy = gate.safety_policy();
      if (!policy) return {false, "abstain without a policy"};
      const auto verdict = policy->evaluate(canonicalize(request.prompt));
      if (verdict.decision != SafetyDecision::kRefuse) {
        return {false, "abstain on a prompt the policy allows"};
      }
      if (output != kRefusalText) return {false, "abstain with wrong text"};
      return {};
    }
    case Decision::kRender:
      break;
  }
  return {false, "render is not a bounded decision"};
}

}  // namespace detail

using detail::shadow_key;
using detail::Verdict;

std::vector<BaselineRecord> generate_baselines(
    const std::vector<ReplayEntry>& entries, Backend& backend) {
  std::vector<BaselineRecord> records;
  records.reserve(entries.size());
  const std::string stamp = iso8601_utc_now();
  for (const ReplayEntry& entry : entries) {
    BaselineRecord record;
    record.request_id = entry.request.request_id;
    record.prompt = entry.request.prompt;
    record.temperature = entry.request.temperature;
    record.seed = entry.request.seed;
    try {
      record.baseline_output = backend.generate(entry.request);
    } catch (const std::exception& e) {
      throw std::runtime_error("baseline capture failed at " +
                               entry.request.request_id + ": " + e.what());
    }
    record.timestamp = stamp;
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<EvalRecord> run_replay(const std::vector<ReplayEntry>& entries,
                                   const std::vector<BaselineRecord>& baselines,
                                   const Gate& gate, Backend& backend,
                                   const RunOptions& options) {
  std::unordered_map<std::string, const BaselineRecord*> baseline_by_id;
  baseline_by_id.reserve(baselines.size());
  for (const BaselineRecord& record : baselines) {
    baseline_by_id[record.request_id] = &record;
  }

  if (ResponseCache* cache = gate.cache()) cache->clear();
  std::unordered_map<std::string, std::string> shadow;

  std::vector<EvalRecord> records;
  records.reserve(entries.size());
  for (const ReplayEntry& entry : entries) {
    const GateResult result = gate.evaluate(entry.request);
    const std::string output =
        dispatch(result.outcome, entry.request, backend).text;

    EvalRecord record;
    record.request_id = entry.request.request_id;
    record.category = entry.category;
    record.decision = result.outcome.decision;
    record.proof_tag = result.outcome.proof_tag;
    record.render_reason = result.outcome.render_reason;
    record.output = output;
    record.gate_latency_ms = result.gate_latency_ms();

    if (result.outcome.decision == Decision::kRender) {
      const auto it = baseline_by_id.find(entry.request.request_id);
      if (it == baseline_by_id.end()) {
        throw std::runtime_error("no baseline for rendered request " +
                                 entry.request.request_id);
      }
      record.exact_match = output == it->second->baseline_output;
      if (!*record.exact_match) record.validation_note = "differs from baseline";
      record.exec_latency_ms =
          simulate_exec_latency_ms(options.profile, output);
      const std::string key = shadow_key(result.canonical_key, entry.request);
      shadow[key] = output;
      if (ResponseCache* cache = gate.cache()) {
        cache->store(result.canonical_key, config_fingerprint(entry.request),
                     output);
      }
    } else {
      const Verdict verdict =
          detail::validate_bounded(gate, entry.request, result, output, shadow);
      record.pathway_valid = verdict.valid;
      if (!verdict.valid) record.validation_note = verdict.note;
    }
    records.push_back(std::move(record));
  }
  return records;
}

double nearest_rank_percentile(std::vector<double> values, double p) {
  if (values.empty()) {
    throw std::invalid_argument("percentile of an empty sample");
  }
  if (p <= 0.0 || p > 100.0) {
    throw std::invalid_argument("percentile must be in (0, 100]");
  }
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[std::min(rank, values.size()) - 1];
}

LatencyStats latency_stats(const std::vector<double>& values) {
  LatencyStats stats;
  if (values.empty()) return stats;
  stats.count = values.size();
  stats.p50 = nearest_rank_percentile(values, 50.0);
  stats.p95 = nearest_rank_percentile(values, 95.0);
  stats.p99 = nearest_rank_percentile(values, 99.0);
  stats.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (const double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  return stats;
}

EvalReport compute_metrics(const std::vector<EvalRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("cannot compute metrics over an empty run");
  }
  EvalReport report;
  report.total = records.size();
  std::vector<double> gate_latencies;
  std::vector<double> exec_latencies;
  gate_latencies.reserve(records.size());

  for (const EvalRecord& record : records) {
    ++report.decision_counts[record.decision];
    auto& breakdown = report.categories[record.category];
    ++breakdown.total;
    if (record.decision == Decision::kRender) {
      ++breakdown.rendered;
      if (!record.exact_match.value_or(false)) ++report.render_mismatches;
      if (record.render_reason) ++report.render_reasons[*record.render_reason];
    } else {
      if (!record.pathway_valid) ++report.pathway_violations;
      if (record.proof_tag) ++report.proof_tags[*record.proof_tag];
    }
    gate_latencies.push_back(record.gate_latency_ms);
    if (record.exec_latency_ms) exec_latencies.push_back(*record.exec_latency_ms);
  }

  const auto rendered = report.decision_counts[Decision::kRender];
  report.execution_reduction =
      1.0 - static_cast<double>(rendered) / static_cast<double>(report.total);
  report.exact_match_rate =
      rendered == 0 ? 1.0
                    : 1.0 - static_cast<double>(report.render_mismatches) /
                                static_cast<double>(rendered);
  report.gate_latency = latency_stats(gate_latencies);
  report.exec_latency = latency_stats(exec_latencies);
  return report;
}

RouterComparison compare_routers(
    const std::vector<routers::LabeledRequest>& population,
    const routers::KeywordRouter& keyword,
    const routers::CacheOnlyRouter& cache_only,
    const routers::IntentRouter& intent, const Gate& gate) {
  RouterComparison comparison;
  comparison.points.push_back(routers::evaluate_router(keyword, population));
  comparison.points.push_back(routers::evaluate_router(cache_only, population));
  comparison.points.push_back(routers::evaluate_router(intent, population));
  comparison.points.push_back(routers::semantic_router_escape(population, gate));
  return comparison;
}

}  // namespace mfee::eval
