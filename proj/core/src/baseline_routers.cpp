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

#include "mfee/baseline_routers.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mfee/text.hpp"

namespace mfee::routers {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool pattern_hits(PatternKind kind, std::string_view pattern,
                  std::string_view canonical) {
  switch (kind) {
    case PatternKind::kSubstring:
      return canonical.find(pattern) != std::string_view::npos;
    case PatternKind::kPrefix:
      return canonical.substr(0, pattern.size()) == pattern;
    case PatternKind::kExact:
      return canonical == pattern;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// KeywordRouter
// ---------------------------------------------------------------------------

KeywordRouter::KeywordRouter(std::vector<Rule> rules)
    : rules_(std::move(rules)) {
  if (rules_.empty()) {
    throw std::invalid_argument("keyword router needs at least one rule");
  }
}

KeywordRouter KeywordRouter::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("keyword rules unreadable: " + path.string());
  }
  std::vector<Rule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 5) {
      std::ostringstream msg;
      msg << "keyword rules " << path.string() << ":" << line_no
          << ": expected 5 tab-separated fields";
      throw std::runtime_error(msg.str());
    }
    Rule rule;
    rule.rule_id = fields[0];
    auto kind = pattern_kind_from_string(fields[1]);
    if (!kind) {
      throw std::runtime_error("unknown pattern kind at line " +
                               std::to_string(line_no));
    }
    rule.kind = *kind;
    rule.pattern = canonicalize(fields[2]);
    if (fields[3] == "canned") {
      rule.action = Rule::Action::kCanned;
    } else if (fields[3] == "refuse") {
      rule.action = Rule::Action::kRefuse;
    } else if (fields[3] == "empty") {
      rule.action = Rule::Action::kEmpty;
    } else {
      throw std::runtime_error("unknown keyword action at line " +
                               std::to_string(line_no));
    }
    rule.response = fields[4];
    rules.push_back(std::move(rule));
  }
  return KeywordRouter(std::move(rules));
}

RouteOutcome KeywordRouter::route(const Request& request) const {
  const std::string key = canonicalize(request.prompt);
  for (const Rule& rule : rules_) {
    if (!pattern_hits(rule.kind, rule.pattern, key)) continue;
    switch (rule.action) {
      case Rule::Action::kCanned:
        return RouteOutcome{Route::kSkip, rule.response, rule.rule_id};
      case Rule::Action::kRefuse:
        return RouteOutcome{Route::kSkip, std::string(kRefusalText),
                            rule.rule_id};
      case Rule::Action::kEmpty:
        return RouteOutcome{Route::kSkip, "", rule.rule_id};
    }
  }
  return RouteOutcome{};
}

// ---------------------------------------------------------------------------
// CacheOnlyRouter
// ---------------------------------------------------------------------------

CacheOnlyRouter::CacheOnlyRouter(std::map<std::string, std::string> seen,
                                 const SafetyPolicy* policy)
    : seen_(std::move(seen)), policy_(policy) {}

RouteOutcome CacheOnlyRouter::route(const Request& request) const {
  const std::string key = canonicalize(request.prompt);
  if (policy_ != nullptr) {
    const SafetyVerdict verdict = policy_->evaluate(key);
    if (verdict.decision == SafetyDecision::kRefuse) {
      return RouteOutcome{Route::kSkip, std::string(kRefusalText),
                          verdict.rule_id.value_or("policy")};
    }
  }
  auto it = seen_.find(key);
  if (it != seen_.end()) {
    return RouteOutcome{Route::kSkip, it->second, "seen"};
  }
  return RouteOutcome{};
}

// ---------------------------------------------------------------------------
// IntentRouter
// ---------------------------------------------------------------------------

IntentRouter::IntentRouter(std::vector<Pattern> patterns)
    : patterns_(std::move(patterns)) {
  if (patterns_.empty()) {
    throw std::invalid_argument("intent router needs at least one pattern");
  }
}

IntentRouter IntentRouter::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("intent patterns unreadable: " + path.string());
  }
  std::vector<Pattern> patterns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 5) {
      std::ostringstream msg;
      msg << "intent patterns " << path.string() << ":" << line_no
          << ": expected 5 tab-separated fields";
      throw std::runtime_error(msg.str());
    }
    Pattern pattern;
    pattern.pattern_id = fields[0];
    pattern.intent = fields[1];
    try {
      pattern.compiled = std::regex(fields[2], std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      std::ostringstream msg;
      msg << "intent patterns " << path.string() << ":" << line_no << ": "
          << e.what();
      throw std::runtime_error(msg.str());
    }
    if (fields[3] == "canned") {
      pattern.action = Pattern::Action::kCanned;
    } else if (fields[3] == "refuse") {
      pattern.action = Pattern::Action::kRefuse;
    } else if (fields[3] == "empty") {
      pattern.action = Pattern::Action::kEmpty;
    } else if (fields[3] == "render") {
      pattern.action = Pattern::Action::kRender;
    } else {
      throw std::runtime_error("unknown intent action at line " +
                               std::to_string(line_no));
    }
    pattern.response = fields[4];
    patterns.push_back(std::move(pattern));
  }
  return IntentRouter(std::move(patterns));
}

RouteOutcome IntentRouter::route(const Request& request) const {
  const std::string key = canonicalize(request.prompt);
  for (const Pattern& pattern : patterns_) {
    if (!std::regex_search(key.begin(), key.end(), pattern.compiled)) continue;
    switch (pattern.action) {
      case Pattern::Action::kCanned:
        return RouteOutcome{Route::kSkip, pattern.response, pattern.pattern_id};
      case Pattern::Action::kRefuse:
        return RouteOutcome{Route::kSkip, std::string(kRefusalText),
                            pattern.pattern_id};
      case Pattern::Action::kEmpty:
        return RouteOutcome{Route::kSkip, "", pattern.pattern_id};
      case Pattern::Action::kRender:
        return RouteOutcome{Route::kRender, "", pattern.pattern_id};
    }
  }
  return RouteOutcome{};
}

// ---------------------------------------------------------------------------
// GateBackedRouter
// ---------------------------------------------------------------------------

GateBackedRouter::GateBackedRouter(const Gate* gate) : gate_(gate) {
  if (gate_ == nullptr) {
    throw std::invalid_argument("gate must not be null");
  }
}

RouteOutcome GateBackedRouter::route(const Request& request) const {
  const GateResult result = gate_->evaluate(request);
  switch (result.outcome.decision) {
    case Decision::kRender:
      return RouteOutcome{Route::kRender, "", result.trace.final_stage};
    case Decision::kDirect:
      return RouteOutcome{Route::kSkip, *result.outcome.direct_output,
                          std::string(to_string(*result.outcome.proof_tag))};
    case Decision::kNoOp:
      return RouteOutcome{Route::kSkip, "", "no_op"};
    case Decision::kAbstain:
      return RouteOutcome{Route::kSkip, std::string(kRefusalText), "abstain"};
  }
  return RouteOutcome{};
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

std::vector<std::string> canonical_preserving_perturbations(
    const std::string& prompt) {
  std::vector<std::string> variants;
  variants.reserve(5);

  std::string upper = prompt;
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  variants.push_back(std::move(upper));

  variants.push_back("  " + prompt + "  ");
  variants.push_back(prompt + "!!!");

  std::string doubled = prompt;
  const std::size_t space = doubled.find(' ');
  if (space != std::string::npos) {
    doubled.insert(space, " ");
  } else {
    doubled.append("  ");  // trailing run still collapses away
  }
  variants.push_back(std::move(doubled));

  std::string flipped = prompt;
  if (!flipped.empty() &&
      std::isalpha(static_cast<unsigned char>(flipped[0]))) {
    const unsigned char c = static_cast<unsigned char>(flipped[0]);
    flipped[0] = static_cast<char>(std::isupper(c) ? std::tolower(c)
                                                   : std::toupper(c));
  }
  flipped.push_back('.');
  variants.push_back(std::move(flipped));

  return variants;
}

namespace {

FrontierPoint evaluate_named(std::string_view name, const Router& router,
                             const std::vector<LabeledRequest>& population) {
  if (population.empty()) {
    throw std::invalid_argument("population must be non-empty");
  }
  FrontierPoint point;
  point.router_name = std::string(name);
  point.population_size = static_cast<int>(population.size());

  int flips = 0;
  int probes = 0;
  for (const LabeledRequest& entry : population) {
    const RouteOutcome outcome = router.route(entry.request);
    if (outcome.decision == Route::kSkip) {
      ++point.skip_count;
      const bool correct = entry.s_label == 1 && entry.skip_response &&
                           outcome.response == *entry.skip_response;
      if (!correct) {
        ++point.correctness_failures;
      }
    }
    for (const std::string& variant :
         canonical_preserving_perturbations(entry.request.prompt)) {
      Request perturbed = entry.request;
      perturbed.prompt = variant;
      ++probes;
      if (router.route(perturbed).decision != outcome.decision) {
        ++flips;
      }
    }
  }
  point.avoidance = static_cast<double>(point.skip_count) /
                    static_cast<double>(point.population_size);
  point.decision_flip_rate =
      probes == 0 ? 0.0 : static_cast<double>(flips) / probes;
  point.brittleness = brittleness_label(point.decision_flip_rate);
  return point;
}

}  // namespace

FrontierPoint evaluate_router(const Router& router,
                              const std::vector<LabeledRequest>& population) {
  return evaluate_named(router.name(), router, population);
}

FrontierPoint semantic_router_escape(
    const std::vector<LabeledRequest>& population, const Gate& gate) {
  const GateBackedRouter router(&gate);
  return evaluate_named(router.name(), router, population);
}

std::string brittleness_label(double flip_rate) {
  if (flip_rate == 0.0) return "none";
  if (flip_rate <= 0.05) return "low";
  if (flip_rate <= 0.25) return "medium";
  return "high";
}

}  // namespace mfee::routers
