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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mfee/config.hpp"
#include "mfee/knowledge_base.hpp"
#include "mfee/response_cache.hpp"
#include "mfee/safety.hpp"
#include "mfee/types.hpp"

namespace mfee {

// Per-stage confidences. Cache hits and deterministic solutions are proofs,
// so they sit at 1.0; knowledge-base answers are curated but matched by
// exact key, hence slightly below. Structural verdicts are definitional.
inline constexpr double kCacheHitConfidence = 1.0;
inline constexpr double kDeterministicConfidence = 1.0;
inline constexpr double kKbLookupConfidence = 0.95;
inline constexpr double kStructuralConfidence = 1.0;

struct GateConfig {
  // A DIRECT below this confidence is demoted to RENDER(low_confidence).
  double direct_confidence_threshold = 0.90;
  // Optional stricter/looser thresholds by workload category. The gate maps
  // each resolving stage to its natural category: cache -> redundant,
  // deterministic -> trivial, knowledge base -> factual.
  std::map<Category, double> category_thresholds;
  // Soft budget for the whole pipeline; the service alarms on sustained
  // violation, the gate itself only reports elapsed time.
  double latency_budget_ms = 8.0;
  bool enable_safety = true;
  bool enable_cache = true;
  bool enable_deterministic = true;
  bool enable_kb = true;
  // Structural triage bounds.
  std::size_t max_prompt_codepoints = 32768;
  double min_alpha_ratio = 0.20;

  // Reads the gate.* keys from a key=value config (with MFEE_* environment
  // overrides). Unknown categories in threshold.<category> keys throw.
  static GateConfig from_config(const KeyValueConfig& kv);

  // Throws std::invalid_argument when a threshold or ratio leaves [0,1] or
  // a bound is not positive.
  void validate() const;
};

struct StageRecord {
  std::string stage;
  std::string outcome;
  double elapsed_ms = 0.0;
};

struct ResolverTrace {
  std::vector<StageRecord> stages;
  std::string final_stage;
  bool demoted = false;

  double total_ms() const;
};

struct TriageReport {
  bool malformed = false;
  std::string reason;  // "empty", "overlong", "no_alphanumeric", "low_alpha_ratio"
  std::string canonical_key;
};

// Structural well-formedness. A prompt is malformed iff it canonicalizes to
// nothing, exceeds the codepoint bound, contains no alphanumeric codepoint,
// or has alphabetic codepoints below min_alpha_ratio of its non-space
// codepoints. Everything else is well formed; triage never judges meaning.
TriageReport structural_triage(std::string_view prompt, const GateConfig& config);

struct GateResult {
  GateOutcome outcome;
  ResolverTrace trace;
  std::string canonical_key;

  double gate_latency_ms() const { return trace.total_ms(); }
};

// The gating function. Stages run in a fixed order:
//
//   structural_triage -> safety_check -> cache_lookup -> deterministic_solve
//     -> kb_lookup -> RENDER(reason)
//
// The first stage that resolves wins. A resolver that fails internally is
// recorded in the trace and skipped; misconfiguration therefore degrades
// toward more execution, never toward a wrong bounded answer. evaluate()
// itself never throws.
class Gate {
 public:
  Gate(GateConfig config, const SafetyPolicy* safety, ResponseCache* cache,
       const KnowledgeBase* kb);

  GateResult evaluate(const Request& request) const;

  const GateConfig& config() const { return config_; }
  ResponseCache* cache() const { return cache_; }
  const SafetyPolicy* safety_policy() const { return safety_; }
  const KnowledgeBase* knowledge_base() const { return kb_; }

  // Threshold actually applied to a stage's DIRECT candidates.
  double effective_threshold(Category stage_category) const;

 private:
  GateConfig config_;
  const SafetyPolicy* safety_;
  ResponseCache* cache_;
  const KnowledgeBase* kb_;
};

// Why a RENDER happened. Precedence: low_confidence when a demotion occurred,
// then novel_generation (generative leading verb or "in the style of"),
// then semantic_ambiguity (fixed set of underspecified prompts), else
// no_pathway.
RenderReason classify_render_reason(std::string_view canonical_key,
                                    bool demoted);
RenderReason render_reason(const Request& request, const ResolverTrace& trace);

}  // namespace mfee
