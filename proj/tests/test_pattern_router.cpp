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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mfee/baseline_routers.hpp"
#include "mfee/pattern_router.hpp"
#include "mfee/text.hpp"

using namespace mfee;
using namespace mfee::routers;

namespace {

Request req(const std::string& id, const std::string& prompt) {
  Request r;
  r.request_id = id;
  r.prompt = prompt;
  r.model = "mfee-ref";
  return r;
}

LabeledRequest labeled(const std::string& id, const std::string& prompt,
                       int s_label, const char* truth = nullptr) {
  LabeledRequest lr;
  lr.request = req(id, prompt);
  lr.s_label = s_label;
  if (truth != nullptr) lr.skip_response = truth;
  return lr;
}

FeatureMap two_features() {
  std::vector<FeaturePredicate> predicates;
  predicates.push_back({"what_is", PredicateKind::kPrefix, "what is ", {}});
  predicates.push_back({"thanks", PredicateKind::kSubstring, "thanks", {}});
  return FeatureMap(std::move(predicates));
}

// Oracle for the enumeration: walk every table id, route every member with
// nothing but the feature map and the table's bits, and evaluate the claim
// exactly as stated. Shares no code with enumerate_frontier.
struct OracleResult {
  std::uint64_t satisfying = 0;
  std::set<std::pair<double, int>> frontier;
  double best_zero_failure_avoidance = 0.0;
};

OracleResult oracle_enumerate(const FeatureMap& map,
                              const std::vector<LabeledRequest>& population) {
  // Constrained set: s_label=1 members of some collision when collisions
  // exist, otherwise every s_label=1 member (premise unmet, conjunction
  // relaxes to "any useful skip").
  std::vector<std::uint32_t> vectors;
  for (const auto& member : population) {
    vectors.push_back(map.extract(canonicalize(member.request.prompt)));
  }
  std::set<std::size_t> constrained;
  for (std::size_t i = 0; i < population.size(); ++i) {
    for (std::size_t j = 0; j < population.size(); ++j) {
      if (population[i].s_label == 1 && population[j].s_label == 0 &&
          vectors[i] == vectors[j]) {
        constrained.insert(i);
      }
    }
  }
  if (constrained.empty()) {
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (population[i].s_label == 1) constrained.insert(i);
    }
  }

  OracleResult result;
  const std::uint64_t table_count = 1ULL << (1ULL << map.arity());
  for (std::uint64_t table = 0; table < table_count; ++table) {
    int skips = 0;
    int false_skips = 0;
    bool constrained_skip = false;
    for (std::size_t i = 0; i < population.size(); ++i) {
      const bool skip = ((table >> vectors[i]) & 1ULL) != 0;
      if (!skip) continue;
      ++skips;
      if (population[i].s_label == 0) ++false_skips;
      if (constrained.count(i) != 0) constrained_skip = true;
    }
    const double avoidance =
        static_cast<double>(skips) / static_cast<double>(population.size());
    if (false_skips == 0 && constrained_skip) ++result.satisfying;
    if (false_skips == 0) {
      result.best_zero_failure_avoidance =
          std::max(result.best_zero_failure_avoidance, avoidance);
    }
    result.frontier.insert({avoidance, false_skips});
  }
  return result;
}

}  // namespace

TEST_CASE("feature extraction sets one bit per matching predicate") {
  const FeatureMap map = two_features();
  CHECK(map.arity() == 2);
  CHECK(map.extract("what is 2+2") == 0b01);
  CHECK(map.extract("thanks a lot") == 0b10);
  CHECK(map.extract("what is this, thanks") == 0b11);
  CHECK(map.extract("tell me a story") == 0b00);
  // extract_features canonicalizes first.
  CHECK(extract_features(req("r", "WHAT IS 2+2?"), map) == 0b01);
}

TEST_CASE("decision table reads routes from the table id bits") {
  // table id 0b0110: vectors 1 and 2 skip, 0 and 3 render.
  const DecisionTable table(2, 0b0110ULL);
  CHECK(table.route(0) == Route::kRender);
  CHECK(table.route(1) == Route::kSkip);
  CHECK(table.route(2) == Route::kSkip);
  CHECK(table.route(3) == Route::kRender);
}

TEST_CASE("find_collisions pairs equal vectors with opposite labels") {
  const FeatureMap map = two_features();
  std::vector<LabeledRequest> population;
  population.push_back(labeled("a", "What is 2+2?", 1, "4"));
  population.push_back(labeled("b", "What is the meaning of life?", 0));
  population.push_back(labeled("c", "Thanks!", 1, "You're welcome."));
  population.push_back(labeled("d", "Write a poem.", 0));

  const auto collisions = find_collisions(population, map);
  REQUIRE(collisions.size() == 1);
  CHECK(collisions[0].skippable_index == 0);
  CHECK(collisions[0].unskippable_index == 1);
  CHECK(collisions[0].feature_vector == 0b01);
}

TEST_CASE("enumeration agrees with the independent oracle") {
  const FeatureMap map = two_features();

  SUBCASE("population with a collision admits no satisfying table") {
    std::vector<LabeledRequest> population;
    population.push_back(labeled("a", "What is 2+2?", 1, "4"));
    population.push_back(labeled("b", "What is the meaning of life?", 0));
    population.push_back(labeled("c", "Thanks!", 1, "You're welcome."));
    population.push_back(labeled("d", "Write a poem.", 0));

    const auto collisions = find_collisions(population, map);
    const auto report = enumerate_frontier(collisions, map, population);
    const auto oracle = oracle_enumerate(map, population);

    CHECK(report.hypothesis_met);
    CHECK(report.tables_enumerated == 16);
    CHECK(report.satisfying_tables == oracle.satisfying);
    CHECK(oracle.satisfying == 0);
    CHECK(report.zero_failure_max_avoidance ==
          doctest::Approx(oracle.best_zero_failure_avoidance));

    std::set<std::pair<double, int>> got;
    for (const auto& sample : report.frontier) {
      got.insert({sample.avoidance, sample.false_skips});
    }
    CHECK(got == oracle.frontier);
  }

  SUBCASE("collision-free population admits a satisfying table") {
    std::vector<LabeledRequest> population;
    population.push_back(labeled("a", "What is 2+2?", 1, "4"));
    population.push_back(labeled("b", "Thanks!", 1, "You're welcome."));
    population.push_back(labeled("c", "Write a poem.", 0));

    const auto collisions = find_collisions(population, map);
    CHECK(collisions.empty());
    const auto report = enumerate_frontier(collisions, map, population);
    const auto oracle = oracle_enumerate(map, population);

    CHECK(!report.hypothesis_met);
    CHECK(report.satisfying_tables == oracle.satisfying);
    CHECK(oracle.satisfying > 0);
  }
}

TEST_CASE("enumeration rejects arity beyond the bound") {
  std::vector<FeaturePredicate> predicates;
  for (int i = 0; i < 5; ++i) {
    predicates.push_back({"p" + std::to_string(i), PredicateKind::kSubstring,
                          "needle" + std::to_string(i), {}});
  }
  const FeatureMap map{std::move(predicates)};
  std::vector<LabeledRequest> population;
  population.push_back(labeled("a", "What is 2+2?", 1, "4"));
  CHECK_THROWS_AS(enumerate_frontier({}, map, population),
                  EnumerationBoundError);
}

TEST_CASE("feature vectors are blind to canonical-preserving rewrites") {
  const FeatureMap map = two_features();
  for (const char* prompt :
       {"What is 2+2?", "Thanks, that fixed it!", "Write a poem about rain.",
        "What is the capital of France?"}) {
    const auto base = extract_features(req("r", prompt), map);
    for (const auto& variant : canonical_preserving_perturbations(prompt)) {
      CHECK(canonicalize(variant) == canonicalize(prompt));
      CHECK(extract_features(req("r", variant), map) == base);
    }
  }
}

TEST_CASE("labeled request files enforce label discipline") {
  namespace fs = std::filesystem;
  const fs::path good = fs::temp_directory_path() / "pop_good.jsonl";
  {
    std::ofstream out(good);
    out << R"({"request":{"request_id":"a","prompt":"What is 2+2?"},"s_label":1,"category":"trivial","skip_response":"4"})"
        << "\n"
        << R"({"request":{"request_id":"b","prompt":"Write a poem."},"s_label":0,"category":"creative"})"
        << "\n";
  }
  const auto population = load_labeled_requests(good);
  REQUIRE(population.size() == 2);
  CHECK(population[0].s_label == 1);
  CHECK(population[0].skip_response == "4");
  CHECK(population[0].category == Category::kTrivial);
  CHECK(!population[1].skip_response.has_value());

  const fs::path bad = fs::temp_directory_path() / "pop_bad.jsonl";
  {
    std::ofstream out(bad);
    // s_label=1 without ground truth is unusable for correctness scoring.
    out << R"({"request":{"request_id":"a","prompt":"Hi"},"s_label":1})"
        << "\n";
  }
  CHECK_THROWS_AS(load_labeled_requests(bad), std::runtime_error);
}
