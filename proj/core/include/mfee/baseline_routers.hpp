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
#include <memory>
#include <string>
#include <vector>

#include "mfee/gate.hpp"
#include "mfee/pattern_router.hpp"
#include "mfee/safety.hpp"
#include "mfee/types.hpp"

namespace mfee::routers {

// What a router does with one request: SKIP carries the response it would
// serve instead of executing; RENDER defers to the backend.
struct RouteOutcome {
  Route decision = Route::kRender;
  std::string response;  // meaningful only for kSkip
  std::string detail;    // rule/pattern id for diagnostics
};

class Router {
 public:
  virtual ~Router() = default;
  virtual RouteOutcome route(const Request& request) const = 0;
  virtual std::string_view name() const = 0;
};

// Hand-curated keyword rules, first match wins. Rule file format:
//   rule_id <TAB> kind <TAB> pattern <TAB> action <TAB> response
// kind in {substring, prefix, exact}; action in {canned, refuse, empty}.
// The response field is the canned text (ignored for refuse/empty).
class KeywordRouter final : public Router {
 public:
  struct Rule {
    std::string rule_id;
    PatternKind kind = PatternKind::kSubstring;
    std::string pattern;
    enum class Action : std::uint8_t { kCanned, kRefuse, kEmpty } action;
    std::string response;
  };

  static KeywordRouter load(const std::filesystem::path& path);

  RouteOutcome route(const Request& request) const override;
  std::string_view name() const override { return "keyword"; }
  std::size_t rule_count() const { return rules_.size(); }

 private:
  explicit KeywordRouter(std::vector<Rule> rules);
  std::vector<Rule> rules_;
};

// Exact canonical-key match against previously served requests, plus the
// shared safety policy. The strongest router that can never be wrong, and
// the weakest at generalizing.
class CacheOnlyRouter final : public Router {
 public:
  // seen maps canonical key -> the output served for it originally.
  CacheOnlyRouter(std::map<std::string, std::string> seen,
                  const SafetyPolicy* policy);

  RouteOutcome route(const Request& request) const override;
  std::string_view name() const override { return "cache_only"; }
  std::size_t seen_count() const { return seen_.size(); }

 private:
  std::map<std::string, std::string> seen_;
  const SafetyPolicy* policy_;
};

// Regex intent patterns with per-pattern actions, first match wins. File:
//   pattern_id <TAB> intent <TAB> regex <TAB> action <TAB> response
// action in {canned, refuse, empty, render}; render patterns classify but
// do not skip.
class IntentRouter final : public Router {
 public:
  struct Pattern {
    std::string pattern_id;
    std::string intent;
    std::regex compiled;
    enum class Action : std::uint8_t { kCanned, kRefuse, kEmpty, kRender } action;
    std::string response;
  };

  static IntentRouter load(const std::filesystem::path& path);

  RouteOutcome route(const Request& request) const override;
  std::string_view name() const override { return "intent"; }
  std::size_t pattern_count() const { return patterns_.size(); }

 private:
  explicit IntentRouter(std::vector<Pattern> patterns);
  std::vector<Pattern> patterns_;
};

// Adapts the gate to the router interface: any non-RENDER decision is a
// skip whose response is the bounded output the dispatcher would serve.
class GateBackedRouter final : public Router {
 public:
  explicit GateBackedRouter(const Gate* gate);

  RouteOutcome route(const Request& request) const override;
  std::string_view name() const override { return "mfee_gate"; }

 private:
  const Gate* gate_;
};

// Evaluation of one router over a labeled population.
struct FrontierPoint {
  std::string router_name;
  int population_size = 0;
  int skip_count = 0;
  double avoidance = 0.0;          // skip_count / population_size
  int correctness_failures = 0;    // skipped with response != ground truth
  double decision_flip_rate = 0.0; // brittleness probe, below
  std::string brittleness;         // none / low / medium / high
};

// Five surface rewrites that leave the canonical prompt unchanged (case,
// padding, internal whitespace, terminal punctuation). A router that sees
// only canonical keys cannot flip on any of them, by construction.
std::vector<std::string> canonical_preserving_perturbations(
    const std::string& prompt);

// Failure rule: skipping an s_label=0 entry is always a failure; skipping
// an s_label=1 entry fails when the served response differs from the
// recorded ground truth.
FrontierPoint evaluate_router(const Router& router,
                              const std::vector<LabeledRequest>& population);

// The escape hatch from the enumeration frontier: route the population
// through the semantic gate and measure the same quantities. Unlike any
// finite-feature table, the gate checks meaning-level evidence before
// skipping, so it can sit above every zero-failure pattern router.
FrontierPoint semantic_router_escape(
    const std::vector<LabeledRequest>& population, const Gate& gate);

std::string brittleness_label(double flip_rate);

}  // namespace mfee::routers
