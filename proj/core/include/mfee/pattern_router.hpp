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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mfee/safety.hpp"
#include "mfee/types.hpp"

namespace mfee::routers {

enum class Route : std::uint8_t { kRender, kSkip };

enum class PredicateKind : std::uint8_t { kSubstring, kPrefix, kRegex };

std::optional<PredicateKind> predicate_kind_from_string(std::string_view name);

// One boolean feature over the canonical prompt.
struct FeaturePredicate {
  std::string name;
  PredicateKind kind = PredicateKind::kSubstring;
  std::string pattern;
  std::optional<std::regex> compiled;  // regex kind only

  bool matches(std::string_view canonical) const;
};

// Finite feature extractor: k predicates map a prompt onto a k-bit vector.
// Any router of the form table(features(prompt)) factors through this map,
// which is exactly what makes such routers enumerable.
class FeatureMap {
 public:
  explicit FeatureMap(std::vector<FeaturePredicate> predicates);

  // File format: name <TAB> kind <TAB> pattern, kind in
  // {substring, prefix, regex}. Patterns match the canonical prompt.
  static FeatureMap load(const std::filesystem::path& path);

  std::size_t arity() const { return predicates_.size(); }
  const std::vector<FeaturePredicate>& predicates() const { return predicates_; }

  // Bit i set iff predicate i matches.
  std::uint32_t extract(std::string_view canonical_prompt) const;

 private:
  std::vector<FeaturePredicate> predicates_;
};

// Canonicalizes the prompt, then extracts. The feature vector depends only
// on the canonical prompt: surface variants are indistinguishable here.
std::uint32_t extract_features(const Request& request, const FeatureMap& map);

// Total routing table over all 2^k feature vectors.
class DecisionTable {
 public:
  DecisionTable(std::size_t arity, std::vector<Route> routes);
  // Table `table_id` in the canonical enumeration order: bit v of table_id
  // gives the route for feature vector v (1 = SKIP).
  DecisionTable(std::size_t arity, std::uint64_t table_id);

  Route route(std::uint32_t feature_vector) const;
  std::size_t arity() const { return arity_; }

 private:
  std::size_t arity_;
  std::vector<Route> routes_;
};

Route route_pattern(const DecisionTable& table, const FeatureMap& map,
                    const Request& request);

// Ground-truth labeled request for router evaluation. s_label=1 means a
// correct bounded response exists without execution; skip_response is that
// response ("" for a correct no-op). s_label=0 entries must be rendered.
struct LabeledRequest {
  Request request;
  int s_label = 0;
  Category category = Category::kMixed;
  std::optional<std::string> skip_response;
};

std::vector<LabeledRequest> load_labeled_requests(
    const std::filesystem::path& path);
void save_labeled_requests(const std::filesystem::path& path,
                           const std::vector<LabeledRequest>& requests);

// A collision: two population members with identical feature vectors but
// opposite S labels. Every table must treat them identically, which is the
// crux of the impossibility argument.
struct CollisionPair {
  std::size_t skippable_index;    // s_label = 1
  std::size_t unskippable_index;  // s_label = 0
  std::uint32_t feature_vector;
};

std::vector<CollisionPair> find_collisions(
    const std::vector<LabeledRequest>& population, const FeatureMap& map);

// One achievable operating point over the enumeration.
struct FrontierSample {
  double avoidance = 0.0;  // skips / population
  int false_skips = 0;     // skips of s_label=0 members

  auto operator<=>(const FrontierSample&) const = default;
};

struct ImpossibilityReport {
  std::size_t arity = 0;
  std::uint64_t tables_enumerated = 0;
  // True when the population actually contains a collision; the theorem's
  // conclusion is only claimed under its hypothesis.
  bool hypothesis_met = false;
  // Tables with zero false skips that still skip at least one s_label=1
  // collision member. Zero under the hypothesis.
  std::uint64_t satisfying_tables = 0;
  // Best avoidance among tables with zero false skips.
  double zero_failure_max_avoidance = 0.0;
  // Deduplicated achievable (avoidance, false_skips) points, sorted.
  std::vector<FrontierSample> frontier;
};

class EnumerationBoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxEnumerableArity = 4;

// Exhaustively enumerates all 2^(2^k) decision tables over the population
// and checks the impossibility claim directly. Throws EnumerationBoundError
// for k > kMaxEnumerableArity (the check is doubly exponential in k).
ImpossibilityReport enumerate_frontier(
    const std::vector<CollisionPair>& collisions, const FeatureMap& map,
    const std::vector<LabeledRequest>& population);

}  // namespace mfee::routers
