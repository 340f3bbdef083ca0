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

#include <doctest.h>

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "mfee/knowledge_base.hpp"
#include "mfee/replay.hpp"
#include "mfee/safety.hpp"
#include "mfee/solver.hpp"
#include "mfee/text.hpp"

using namespace mfee;
using namespace mfee::eval;

namespace {

namespace fs = std::filesystem;

KnowledgeBase fixture_kb() {
  return KnowledgeBase::load(fs::path(MFEE_FIXTURE_DIR) /
                             "knowledge_base.tsv");
}

SafetyPolicy fixture_policy() {
  return SafetyPolicy::load(fs::path(MFEE_FIXTURE_DIR) / "safety_policy.tsv");
}

}  // namespace

TEST_CASE("default mix matches the published workload") {
  const CategoryMix mix = CategoryMix::default_mix();
  CHECK(mix.count(Category::kFactual) == 200);
  CHECK(mix.count(Category::kConversational) == 200);
  CHECK(mix.count(Category::kCreative) == 150);
  CHECK(mix.count(Category::kRedundant) == 150);
  CHECK(mix.count(Category::kTrivial) == 100);
  CHECK(mix.count(Category::kSafety) == 100);
  CHECK(mix.count(Category::kMixed) == 100);
  CHECK(mix.total() == 1000);
}

TEST_CASE("mix parsing accepts overrides and rejects junk") {
  const CategoryMix mix = CategoryMix::parse("factual=20,trivial=5");
  CHECK(mix.count(Category::kFactual) == 20);
  CHECK(mix.count(Category::kTrivial) == 5);
  CHECK(mix.total() == 25);

  CHECK_THROWS_AS(CategoryMix::parse("nosuch=3"), std::invalid_argument);
  CHECK_THROWS_AS(CategoryMix::parse("factual=-1"), std::invalid_argument);
  CHECK_THROWS_AS(CategoryMix::parse("factual"), std::invalid_argument);
  CHECK_THROWS_AS(CategoryMix::parse("factual=abc"), std::invalid_argument);
}

TEST_CASE("replay generation is deterministic in the seed") {
  const KnowledgeBase kb = fixture_kb();
  const SafetyPolicy policy = fixture_policy();
  const CategoryMix mix = CategoryMix::parse(
      "factual=12,conversational=10,creative=8,redundant=8,trivial=6,"
      "safety=6,mixed=6");

  const auto a = build_replay_set(mix, 7, kb, policy);
  const auto b = build_replay_set(mix, 7, kb, policy);
  const auto c = build_replay_set(mix, 8, kb, policy);

  REQUIRE(a.size() == 56);
  REQUIRE(b.size() == 56);
  bool identical = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    identical = identical && a[i].request.prompt == b[i].request.prompt &&
                a[i].request.request_id == b[i].request.request_id &&
                a[i].request.seed == b[i].request.seed &&
                a[i].category == b[i].category && a[i].s_label == b[i].s_label;
  }
  CHECK(identical);

  bool differs = a.size() != c.size();
  for (std::size_t i = 0; !differs && i < a.size(); ++i) {
    differs = a[i].request.prompt != c[i].request.prompt;
  }
  CHECK(differs);
}

TEST_CASE("generated entries honor their own labels") {
  const KnowledgeBase kb = fixture_kb();
  const SafetyPolicy policy = fixture_policy();
  const auto entries = build_replay_set(
      CategoryMix::parse("factual=15,conversational=10,trivial=15,safety=10,"
                         "creative=10,redundant=10"),
      99, kb, policy);

  std::set<std::string> earlier_keys;
  for (const auto& entry : entries) {
    const std::string key = canonicalize(entry.request.prompt);

    if (entry.expected_pathway == ProofTag::kKbLookup) {
      CHECK(kb.lookup(key).has_value());
    }
    if (entry.expected_pathway == ProofTag::kDeterministicRule) {
      CHECK(solve_canonical(key).has_value());
    }
    if (entry.expected_pathway == ProofTag::kCacheHit) {
      // A cache hit only exists because an earlier entry rendered the same
      // canonical prompt; the pool must contain that base.
      CHECK(earlier_keys.count(key) == 1);
    }
    if (entry.category == Category::kSafety && entry.s_label == 1) {
      CHECK(safety_check(policy, entry.request.prompt).decision ==
            SafetyDecision::kRefuse);
    }
    if (entry.s_label == 0) {
      // Render-bound prompts must not be resolvable by a bounded pathway.
      CHECK(!solve_canonical(key).has_value());
      CHECK(safety_check(policy, entry.request.prompt).decision ==
            SafetyDecision::kAllow);
    }

    earlier_keys.insert(key);
  }
}

TEST_CASE("redundant entries are surface variants of earlier prompts") {
  const KnowledgeBase kb = fixture_kb();
  const SafetyPolicy policy = fixture_policy();
  const auto entries = build_replay_set(
      CategoryMix::parse("factual=10,conversational=10,creative=10,"
                         "redundant=10"),
      3, kb, policy);

  std::set<std::string> earlier_keys;
  int cache_variants = 0;
  for (const auto& entry : entries) {
    const std::string key = canonicalize(entry.request.prompt);
    if (entry.category == Category::kRedundant &&
        entry.expected_pathway == ProofTag::kCacheHit) {
      ++cache_variants;
      CHECK(earlier_keys.count(key) == 1);
      CHECK(entry.s_label == 1);
    }
    earlier_keys.insert(key);
  }
  CHECK(cache_variants > 0);
}

TEST_CASE("replay files round trip") {
  const KnowledgeBase kb = fixture_kb();
  const SafetyPolicy policy = fixture_policy();
  const auto entries = build_replay_set(
      CategoryMix::parse("factual=5,creative=5"), 21, kb, policy);

  const fs::path path = fs::temp_directory_path() / "replay_roundtrip.jsonl";
  write_replay(path, entries);
  const auto loaded = read_replay(path);
  REQUIRE(loaded.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(loaded[i].request.request_id == entries[i].request.request_id);
    CHECK(loaded[i].request.prompt == entries[i].request.prompt);
    CHECK(loaded[i].request.max_tokens == entries[i].request.max_tokens);
    CHECK(loaded[i].category == entries[i].category);
    CHECK(loaded[i].s_label == entries[i].s_label);
    CHECK(loaded[i].expected_pathway == entries[i].expected_pathway);
  }

  CHECK_THROWS(read_replay(fs::temp_directory_path() / "replay_nofile.jsonl"));
}
