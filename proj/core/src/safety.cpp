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

#include "mfee/safety.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mfee/text.hpp"

namespace mfee {

std::string_view to_string(PatternKind k) {
  switch (k) {
    case PatternKind::kSubstring: return "substring";
    case PatternKind::kPrefix: return "prefix";
    case PatternKind::kExact: return "exact";
  }
  return "substring";
}

std::optional<PatternKind> pattern_kind_from_string(std::string_view name) {
  if (name == "substring") return PatternKind::kSubstring;
  if (name == "prefix") return PatternKind::kPrefix;
  if (name == "exact") return PatternKind::kExact;
  return std::nullopt;
}

SafetyPolicy SafetyPolicy::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("safety policy unreadable: " + path.string());
  }
  SafetyPolicy policy;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 =
        tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos ||
        line.find('\t', tab2 + 1) != std::string::npos) {
      std::ostringstream msg;
      msg << "safety policy " << path.string() << ":" << line_no
          << ": expected rule_id<TAB>kind<TAB>pattern";
      throw std::runtime_error(msg.str());
    }
    SafetyRule rule;
    rule.rule_id = line.substr(0, tab1);
    const std::string kind_name = line.substr(tab1 + 1, tab2 - tab1 - 1);
    const auto kind = pattern_kind_from_string(kind_name);
    if (!kind) {
      std::ostringstream msg;
      msg << "safety policy " << path.string() << ":" << line_no
          << ": unknown pattern kind '" << kind_name << "'";
      throw std::runtime_error(msg.str());
    }
    rule.kind = *kind;
    rule.pattern = canonicalize(line.substr(tab2 + 1));
    if (rule.rule_id.empty() || rule.pattern.empty()) {
      std::ostringstream msg;
      msg << "safety policy " << path.string() << ":" << line_no
          << ": rule_id and pattern must be non-empty";
      throw std::runtime_error(msg.str());
    }
    policy.add_rule(std::move(rule));
  }
  if (policy.rules_.empty()) {
    throw std::runtime_error("safety policy has no rules: " + path.string());
  }
  return policy;
}

SafetyVerdict SafetyPolicy::evaluate(std::string_view canonical_key) const {
  for (const SafetyRule& rule : rules_) {
    bool hit = false;
    switch (rule.kind) {
      case PatternKind::kSubstring:
        hit = canonical_key.find(rule.pattern) != std::string_view::npos;
        break;
      case PatternKind::kPrefix:
        hit = canonical_key.substr(0, rule.pattern.size()) == rule.pattern;
        break;
      case PatternKind::kExact:
        hit = canonical_key == rule.pattern;
        break;
    }
    if (hit) {
      return SafetyVerdict{SafetyDecision::kRefuse, rule.rule_id};
    }
  }
  return SafetyVerdict{};
}

void SafetyPolicy::add_rule(SafetyRule rule) {
  rules_.push_back(std::move(rule));
}

SafetyVerdict safety_check(const SafetyPolicy& policy, std::string_view prompt) {
  return policy.evaluate(canonicalize(prompt));
}

}  // namespace mfee
