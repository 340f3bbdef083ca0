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

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mfee {

// The control plane classifies every request into exactly one of these
// actions. RENDER hands the request to the execution plane untouched; the
// other three are bounded responses that never invoke the backend.
enum class Decision : std::uint8_t {
  kRender,
  kDirect,
  kNoOp,
  kAbstain,
};

// Why a request fell through to RENDER.
enum class RenderReason : std::uint8_t {
  kNovelGeneration,
  kSemanticAmbiguity,
  kLowConfidence,
  kNoPathway,
};

// Which resolver produced a DIRECT answer.
enum class ProofTag : std::uint8_t {
  kCacheHit,
  kDeterministicRule,
  kKbLookup,
};

// Workload categories used by the replay harness and reporting.
enum class Category : std::uint8_t {
  kFactual,
  kConversational,
  kCreative,
  kRedundant,
  kTrivial,
  kSafety,
  kMixed,
};

inline constexpr std::array<Category, 7> kAllCategories = {
    Category::kFactual,    Category::kConversational, Category::kCreative,
    Category::kRedundant,  Category::kTrivial,        Category::kSafety,
    Category::kMixed,
};

std::string_view to_string(Decision d);
std::string_view to_string(RenderReason r);
std::string_view to_string(ProofTag p);
std::string_view to_string(Category c);

std::optional<Decision> decision_from_string(std::string_view name);
std::optional<RenderReason> render_reason_from_string(std::string_view name);
std::optional<ProofTag> proof_tag_from_string(std::string_view name);
std::optional<Category> category_from_string(std::string_view name);

// A validated inference request. `seed` pins the sampling RNG so that a
// request replays to identical bytes; the evaluation protocol fixes it.
inline constexpr long long kDefaultSeed = 12345;
inline constexpr int kDefaultMaxTokens = 1000;

struct Request {
  std::string request_id;
  std::string prompt;
  std::string model;
  double temperature = 0.0;
  int max_tokens = kDefaultMaxTokens;
  long long seed = kDefaultSeed;

  bool operator==(const Request&) const = default;
};

// Wire-shaped request before validation; absent optionals mean the field was
// missing from the payload.
struct RawRequest {
  std::optional<std::string> request_id;
  std::optional<std::string> prompt;
  std::optional<std::string> model;
  std::optional<double> temperature;
  std::optional<long long> max_tokens;
  std::optional<long long> seed;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Checks field constraints and fills defaults (model "default", temperature
// 0.0, max_tokens 1000, seed 12345). Throws ValidationError naming the bad
// field when the request_id is missing or empty, the prompt is missing,
// max_tokens is not positive, or temperature is negative.
Request validate_request(const RawRequest& raw);

// Gate verdict for one request. Field presence is tied to the decision:
// DIRECT carries the output and its proof tag, RENDER carries a reason.
struct GateOutcome {
  Decision decision = Decision::kRender;
  double confidence = 1.0;
  std::optional<std::string> direct_output;
  std::optional<ProofTag> proof_tag;
  std::optional<RenderReason> render_reason;
};

// True when the optional fields match the decision as described above.
bool outcome_well_formed(const GateOutcome& outcome);

// What the caller ultimately receives.
enum class ResponseKind : std::uint8_t {
  kGenerated,  // RENDER: backend output
  kDirect,     // bounded resolver output
  kEmpty,      // NO_OP
  kRefusal,    // ABSTAIN
};

inline constexpr std::string_view kRefusalText = "Request refused by policy.";

struct FinalResponse {
  ResponseKind kind = ResponseKind::kGenerated;
  std::string text;

  bool operator==(const FinalResponse&) const = default;
};

// Inputs to the utility accounting for a single handled request.
struct CostModel {
  double gate_cost_ms = 0.0;
  double exec_cost_ms = 0.0;
  double value = 1.0;
  bool correct = true;
};

}  // namespace mfee
