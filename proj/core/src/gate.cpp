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

#include "mfee/gate.hpp"

#include <array>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "mfee/fingerprint.hpp"
#include "mfee/solver.hpp"
#include "mfee/text.hpp"

namespace mfee {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr std::array<std::string_view, 6> kGenerativeMarkers = {
    "write", "generate", "compose", "imagine", "create", "continue",
};

// Underspecified prompts with no resolvable single meaning. Exact canonical
// keys; longer prompts that merely contain these phrases carry their own
// context and are not ambiguous in this sense.
constexpr std::array<std::string_view, 10> kAmbiguousPrompts = {
    "what should i do",
    "what do you think",
    "can you help",
    "is it good",
    "is this right",
    "what would you suggest",
    "what's the best option",
    "should i do it",
    "what now",
    "any thoughts",
};

bool starts_with_word(std::string_view key, std::string_view word) {
  if (key.substr(0, word.size()) != word) return false;
  return key.size() == word.size() || key[word.size()] == ' ';
}

}  // namespace

GateConfig GateConfig::from_config(const KeyValueConfig& kv) {
  GateConfig config;
  config.direct_confidence_threshold = kv.get_double(
      "direct_confidence_threshold", config.direct_confidence_threshold);
  config.latency_budget_ms =
      kv.get_double("latency_budget_ms", config.latency_budget_ms);
  config.enable_safety = kv.get_bool("enable_safety", config.enable_safety);
  config.enable_cache = kv.get_bool("enable_cache", config.enable_cache);
  config.enable_deterministic =
      kv.get_bool("enable_deterministic", config.enable_deterministic);
  config.enable_kb = kv.get_bool("enable_kb", config.enable_kb);
  config.max_prompt_codepoints = static_cast<std::size_t>(kv.get_int(
      "max_prompt_codepoints",
      static_cast<long long>(config.max_prompt_codepoints)));
  config.min_alpha_ratio =
      kv.get_double("min_alpha_ratio", config.min_alpha_ratio);
  for (Category category : kAllCategories) {
    const std::string key = "threshold." + std::string(to_string(category));
    if (auto value = kv.get(key)) {
      config.category_thresholds[category] = kv.get_double(key, 0.0);
    }
  }
  config.validate();
  return config;
}

void GateConfig::validate() const {
  auto check_unit = [](double v, const char* name) {
    if (v < 0.0 || v > 1.0) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
  };
  check_unit(direct_confidence_threshold, "direct_confidence_threshold");
  check_unit(min_alpha_ratio, "min_alpha_ratio");
  for (const auto& [category, threshold] : category_thresholds) {
    check_unit(threshold, "category threshold");
    (void)category;
  }
  if (latency_budget_ms <= 0.0) {
    throw std::invalid_argument("latency_budget_ms must be positive");
  }
  if (max_prompt_codepoints == 0) {
    throw std::invalid_argument("max_prompt_codepoints must be positive");
  }
}

double ResolverTrace::total_ms() const {
  double total = 0.0;
  for (const StageRecord& record : stages) total += record.elapsed_ms;
  return total;
}

TriageReport structural_triage(std::string_view prompt,
                               const GateConfig& config) {
  TriageReport report;
  if (codepoint_count(prompt) > config.max_prompt_codepoints) {
    report.malformed = true;
    report.reason = "overlong";
    return report;
  }
  report.canonical_key = canonicalize(prompt);
  if (report.canonical_key.empty()) {
    report.malformed = true;
    report.reason = "empty";
    return report;
  }
  const TextStats stats = analyze_text(report.canonical_key);
  if (stats.alphanumeric == 0) {
    report.malformed = true;
    report.reason = "no_alphanumeric";
    return report;
  }
  if (stats.non_space > 0 &&
      static_cast<double>(stats.alphabetic) <
          config.min_alpha_ratio * static_cast<double>(stats.non_space)) {
    report.malformed = true;
    report.reason = "low_alpha_ratio";
    return report;
  }
  return report;
}

Gate::Gate(GateConfig config, const SafetyPolicy* safety, ResponseCache* cache,
           const KnowledgeBase* kb)
    : config_(std::move(config)), safety_(safety), cache_(cache), kb_(kb) {
  config_.validate();
}

double Gate::effective_threshold(Category stage_category) const {
  auto it = config_.category_thresholds.find(stage_category);
  if (it != config_.category_thresholds.end()) return it->second;
  return config_.direct_confidence_threshold;
}

GateResult Gate::evaluate(const Request& request) const {
  GateResult result;
  ResolverTrace& trace = result.trace;

  auto record = [&trace](std::string stage, std::string outcome, double ms) {
    trace.stages.push_back(StageRecord{std::move(stage), std::move(outcome), ms});
  };

  // Stage 1: structural triage (owns canonicalization).
  {
    const auto start = Clock::now();
    const TriageReport report = structural_triage(request.prompt, config_);
    result.canonical_key = report.canonical_key;
    if (report.malformed) {
      record("structural_triage", "malformed:" + report.reason, ms_since(start));
      trace.final_stage = "structural_triage";
      result.outcome = GateOutcome{Decision::kNoOp, kStructuralConfidence,
                                   std::nullopt, std::nullopt, std::nullopt};
      return result;
    }
    record("structural_triage", "well_formed", ms_since(start));
  }

  const std::string& key = result.canonical_key;

  // Stage 2: safety deny rules.
  if (config_.enable_safety && safety_ != nullptr) {
    const auto start = Clock::now();
    try {
      const SafetyVerdict verdict = safety_->evaluate(key);
      if (verdict.decision == SafetyDecision::kRefuse) {
        record("safety_check", "refuse:" + verdict.rule_id.value_or("?"),
               ms_since(start));
        trace.final_stage = "safety_check";
        result.outcome = GateOutcome{Decision::kAbstain, kStructuralConfidence,
                                     std::nullopt, std::nullopt, std::nullopt};
        return result;
      }
      record("safety_check", "allow", ms_since(start));
    } catch (const std::exception& e) {
      record("safety_check", std::string("error:") + e.what(), ms_since(start));
    }
  }

  // One demotion lambda shared by the three DIRECT-producing stages. Returns
  // true when the candidate survives; false marks the trace demoted and the
  // caller falls through to RENDER(low_confidence).
  auto admit_direct = [this, &trace](double confidence, Category category,
                                     std::string* note) {
    const double threshold = effective_threshold(category);
    if (confidence >= threshold) return true;
    trace.demoted = true;
    std::ostringstream msg;
    msg << "demoted:confidence " << confidence << " < threshold " << threshold;
    *note = msg.str();
    return false;
  };

  // Stage 3: response cache.
  if (config_.enable_cache && cache_ != nullptr) {
    const auto start = Clock::now();
    try {
      auto hit = cache_->lookup(key, config_fingerprint(request));
      if (hit) {
        std::string note;
        if (admit_direct(kCacheHitConfidence, Category::kRedundant, &note)) {
          record("cache_lookup", "hit", ms_since(start));
          trace.final_stage = "cache_lookup";
          result.outcome =
              GateOutcome{Decision::kDirect, kCacheHitConfidence,
                          std::move(*hit), ProofTag::kCacheHit, std::nullopt};
          return result;
        }
        record("cache_lookup", note, ms_since(start));
      } else {
        record("cache_lookup", "miss", ms_since(start));
      }
    } catch (const std::exception& e) {
      record("cache_lookup", std::string("error:") + e.what(), ms_since(start));
    }
  }

  // Stage 4: deterministic solver.
  if (config_.enable_deterministic && !trace.demoted) {
    const auto start = Clock::now();
    try {
      auto solved = solve_canonical(key);
      if (solved) {
        std::string note;
        if (admit_direct(kDeterministicConfidence, Category::kTrivial, &note)) {
          record("deterministic_solve", "solved", ms_since(start));
          trace.final_stage = "deterministic_solve";
          result.outcome = GateOutcome{
              Decision::kDirect, kDeterministicConfidence, std::move(*solved),
              ProofTag::kDeterministicRule, std::nullopt};
          return result;
        }
        record("deterministic_solve", note, ms_since(start));
      } else {
        record("deterministic_solve", "no_match", ms_since(start));
      }
    } catch (const std::exception& e) {
      record("deterministic_solve", std::string("error:") + e.what(),
             ms_since(start));
    }
  }

  // Stage 5: knowledge base.
  if (config_.enable_kb && kb_ != nullptr && !trace.demoted) {
    const auto start = Clock::now();
    try {
      auto answer = kb_->lookup(key);
      if (answer) {
        std::string note;
        if (admit_direct(kKbLookupConfidence, Category::kFactual, &note)) {
          record("kb_lookup", "hit", ms_since(start));
          trace.final_stage = "kb_lookup";
          result.outcome =
              GateOutcome{Decision::kDirect, kKbLookupConfidence,
                          std::move(*answer), ProofTag::kKbLookup, std::nullopt};
          return result;
        }
        record("kb_lookup", note, ms_since(start));
      } else {
        record("kb_lookup", "miss", ms_since(start));
      }
    } catch (const std::exception& e) {
      record("kb_lookup", std::string("error:") + e.what(), ms_since(start));
    }
  }

  // Stage 6: conservative fallback.
  {
    const auto start = Clock::now();
    const RenderReason reason = classify_render_reason(key, trace.demoted);
    record("render", std::string(to_string(reason)), ms_since(start));
    trace.final_stage = "render";
    result.outcome = GateOutcome{Decision::kRender, kStructuralConfidence,
                                 std::nullopt, std::nullopt, reason};
  }
  return result;
}

RenderReason classify_render_reason(std::string_view canonical_key,
                                    bool demoted) {
  if (demoted) return RenderReason::kLowConfidence;
  for (std::string_view marker : kGenerativeMarkers) {
    if (starts_with_word(canonical_key, marker)) {
      return RenderReason::kNovelGeneration;
    }
  }
  if (canonical_key.find("in the style of") != std::string_view::npos) {
    return RenderReason::kNovelGeneration;
  }
  for (std::string_view ambiguous : kAmbiguousPrompts) {
    if (canonical_key == ambiguous) {
      return RenderReason::kSemanticAmbiguity;
    }
  }
  return RenderReason::kNoPathway;
}

RenderReason render_reason(const Request& request, const ResolverTrace& trace) {
  return classify_render_reason(canonicalize(request.prompt), trace.demoted);
}

}  // namespace mfee
