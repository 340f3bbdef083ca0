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

#include "mfee/types.hpp"

#include <limits>

namespace mfee {

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kRender: return "RENDER";
    case Decision::kDirect: return "DIRECT";
    case Decision::kNoOp: return "NO_OP";
    case Decision::kAbstain: return "ABSTAIN";
  }
  return "RENDER";
}

std::string_view to_string(RenderReason r) {
  switch (r) {
    case RenderReason::kNovelGeneration: return "novel_generation";
    case RenderReason::kSemanticAmbiguity: return "semantic_ambiguity";
    case RenderReason::kLowConfidence: return "low_confidence";
    case RenderReason::kNoPathway: return "no_pathway";
  }
  return "no_pathway";
}

std::string_view to_string(ProofTag p) {
  switch (p) {
    case ProofTag::kCacheHit: return "cache_hit";
    case ProofTag::kDeterministicRule: return "deterministic_rule";
    case ProofTag::kKbLookup: return "kb_lookup";
  }
  return "cache_hit";
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kFactual: return "factual";
    case Category::kConversational: return "conversational";
    case Category::kCreative: return "creative";
    case Category::kRedundant: return "redundant";
    case Category::kTrivial: return "trivial";
    case Category::kSafety: return "safety";
    case Category::kMixed: return "mixed";
  }
  return "mixed";
}

std::optional<Decision> decision_from_string(std::string_view name) {
  if (name == "RENDER") return Decision::kRender;
  if (name == "DIRECT") return Decision::kDirect;
  if (name == "NO_OP") return Decision::kNoOp;
  if (name == "ABSTAIN") return Decision::kAbstain;
  return std::nullopt;
}

std::optional<RenderReason> render_reason_from_string(std::string_view name) {
  if (name == "novel_generation") return RenderReason::kNovelGeneration;
  if (name == "semantic_ambiguity") return RenderReason::kSemanticAmbiguity;
  if (name == "low_confidence") return RenderReason::kLowConfidence;
  if (name == "no_pathway") return RenderReason::kNoPathway;
  return std::nullopt;
}

std::optional<ProofTag> proof_tag_from_string(std::string_view name) {
  if (name == "cache_hit") return ProofTag::kCacheHit;
  if (name == "deterministic_rule") return ProofTag::kDeterministicRule;
  if (name == "kb_lookup") return ProofTag::kKbLookup;
  return std::nullopt;
}

std::optional<Category> category_from_string(std::string_view name) {
  for (Category c : kAllCategories) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

Request validate_request(const RawRequest& raw) {
  if (!raw.request_id.has_value() || raw.request_id->empty()) {
    throw ValidationError("request_id", "request_id must be a non-empty string");
  }
  if (!raw.prompt.has_value()) {
    throw ValidationError("prompt", "prompt is required");
  }
  Request request;
  request.request_id = *raw.request_id;
  request.prompt = *raw.prompt;
  request.model = raw.model.value_or("default");
  request.temperature = raw.temperature.value_or(0.0);
  if (request.temperature < 0.0) {
    throw ValidationError("temperature", "temperature must be non-negative");
  }
  const long long max_tokens = raw.max_tokens.value_or(kDefaultMaxTokens);
  if (max_tokens <= 0) {
    throw ValidationError("max_tokens", "max_tokens must be a positive integer");
  }
  if (max_tokens > std::numeric_limits<int>::max()) {
    throw ValidationError("max_tokens", "max_tokens is out of range");
  }
  request.max_tokens = static_cast<int>(max_tokens);
  request.seed = raw.seed.value_or(kDefaultSeed);
  return request;
}

bool outcome_well_formed(const GateOutcome& outcome) {
  if (outcome.confidence < 0.0 || outcome.confidence > 1.0) return false;
  const bool is_direct = outcome.decision == Decision::kDirect;
  const bool is_render = outcome.decision == Decision::kRender;
  if (outcome.direct_output.has_value() != is_direct) return false;
  if (outcome.proof_tag.has_value() != is_direct) return false;
  if (outcome.render_reason.has_value() != is_render) return false;
  return true;
}

}  // namespace mfee
