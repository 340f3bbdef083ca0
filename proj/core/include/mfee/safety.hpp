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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mfee {

enum class SafetyDecision : std::uint8_t { kAllow, kRefuse };

enum class PatternKind : std::uint8_t { kSubstring, kPrefix, kExact };

std::string_view to_string(PatternKind k);
std::optional<PatternKind> pattern_kind_from_string(std::string_view name);

struct SafetyRule {
  std::string rule_id;
  PatternKind kind = PatternKind::kSubstring;
  std::string pattern;  // matched against the canonical prompt
};

struct SafetyVerdict {
  SafetyDecision decision = SafetyDecision::kAllow;
  std::optional<std::string> rule_id;  // present iff refused
};

// Deny-rule policy over canonical prompts. First matching rule wins, rules
// evaluate in file order. File format, one rule per line:
//   rule_id <TAB> pattern_kind <TAB> pattern
// where pattern_kind is "substring", "prefix", or "exact". Patterns are
// canonicalized at load. An empty rule set allows everything; deciding that
// traffic needs no policy must be explicit, so construction from an empty
// file throws.
class SafetyPolicy {
 public:
  SafetyPolicy() = default;
  virtual ~SafetyPolicy() = default;

  static SafetyPolicy load(const std::filesystem::path& path);

  virtual SafetyVerdict evaluate(std::string_view canonical_key) const;

  const std::vector<SafetyRule>& rules() const { return rules_; }
  void add_rule(SafetyRule rule);

 private:
  std::vector<SafetyRule> rules_;
};

// Convenience wrapper: canonicalizes the prompt, then evaluates the policy.
SafetyVerdict safety_check(const SafetyPolicy& policy, std::string_view prompt);

}  // namespace mfee
