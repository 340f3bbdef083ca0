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

#include <json.hpp>

#include "mfee/backend.hpp"
#include "mfee/eval.hpp"
#include "mfee/gate.hpp"
#include "mfee/knowledge_base.hpp"
#include "mfee/response_cache.hpp"
#include "mfee/safety.hpp"

using namespace mfee;
using namespace mfee::eval;

namespace {

ReplayEntry trace_entry(const std::string& id, const std::string& prompt,
                        const std::string& timestamp,
                        Category category = Category::kCreative) {
  ReplayEntry entry;
  entry.request.request_id = id;
  entry.request.prompt = prompt;
  entry.request.model = "mfee-ref";
  entry.category = category;
  entry.timestamp = timestamp;
  entry.user = "u01";
  return entry;
}

// Records which request ids actually hit the backend.
class RecordingBackend final : public Backend {
 public:
  std::string generate(const Request& request) override {
    seen_.insert(request.request_id);
    return inner_.generate(request);
  }
  std::string_view kind() const override { return "recording"; }
  const std::set<std::string>& seen() const { return seen_; }

 private:
  ReferenceBackend inner_;
  std::set<std::string> seen_;
};

// Appends a fresh counter to every output, so no two calls agree. Any
// RENDER then fails the determinism recheck, which is the regression
// signal the temporal report is supposed to surface.
class FlakyBackend final : public Backend {
 public:
  std::string generate(const Request& request) override {
    return inner_.generate(request) + "#" + std::to_string(++calls_);
  }
  std::string_view kind() const override { return "flaky"; }

 private:
  ReferenceBackend inner_;
  int calls_ = 0;
};

struct TemporalRig {
  SafetyPolicy policy;
  KnowledgeBase kb;
  ResponseCache cache{256};
  Gate gate;

  TemporalRig()
      : policy(SafetyPolicy::load(std::filesystem::path(MFEE_FIXTURE_DIR) /
                                  "safety_policy.tsv")),
        kb(KnowledgeBase::load(std::filesystem::path(MFEE_FIXTURE_DIR) /
                               "knowledge_base.tsv")),
        gate(GateConfig{}, &policy, &cache, &kb) {}
};

}  // namespace

TEST_CASE("a repeated render becomes a cache hit") {
  TemporalRig rig;
  RecordingBackend backend;
  const std::string prompt = "Write a limerick about a stubborn kettle.";
  std::vector<ReplayEntry> trace;
  trace.push_back(trace_entry("t1", prompt, "2026-02-03T09:00:00Z"));
  trace.push_back(trace_entry("t2", prompt, "2026-02-03T09:05:00Z"));
  trace.push_back(trace_entry("t3", prompt, "2026-02-03T09:10:00Z"));
  trace.push_back(trace_entry("t4", prompt, "2026-02-03T09:15:00Z"));
  trace.push_back(trace_entry("t5", prompt, "2026-02-03T09:20:00Z"));

  const TraceReport report = run_temporal(trace, rig.gate, backend);
  CHECK(report.entries == 5);
  CHECK(report.baseline_calls == 1);
  CHECK(report.gated_calls == 1);
  CHECK(report.regressions == 0);
  CHECK(report.decision_counts.at(Decision::kRender) == 1);
  CHECK(report.decision_counts.at(Decision::kDirect) == 4);
  // Only the first entry ever reached the backend.
  CHECK(backend.seen() == std::set<std::string>{"t1"});
}

TEST_CASE("avoidance counts calls saved against the dedup baseline") {
  TemporalRig rig;
  ReferenceBackend backend;

  SUBCASE("single novel request saves nothing") {
    std::vector<ReplayEntry> trace;
    trace.push_back(trace_entry("t1", "Write a short story about fog.",
                                "2026-02-03T09:00:00Z"));
    const TraceReport report = run_temporal(trace, rig.gate, backend);
    CHECK(report.baseline_calls == 1);
    CHECK(report.gated_calls == 1);
    CHECK(report.avoided_calls == 0);
    CHECK(report.avoidance == doctest::Approx(0.0));
  }

  SUBCASE("bounded answers save their whole category") {
    std::vector<ReplayEntry> trace;
    trace.push_back(trace_entry("t1", "What is 2+2?", "2026-02-03T09:00:00Z",
                                Category::kTrivial));
    trace.push_back(trace_entry("t2", "What is 17*3?", "2026-02-03T09:01:00Z",
                                Category::kTrivial));
    trace.push_back(trace_entry("t3", "Write a short story about fog.",
                                "2026-02-03T09:02:00Z"));
    const TraceReport report = run_temporal(trace, rig.gate, backend);
    CHECK(report.baseline_calls == 3);
    CHECK(report.gated_calls == 1);
    CHECK(report.avoided_calls == 2);
    CHECK(report.avoidance == doctest::Approx(2.0 / 3.0));
    CHECK(report.regressions == 0);
  }
}

TEST_CASE("temporal replay rejects disordered or bare traces") {
  TemporalRig rig;
  ReferenceBackend backend;

  CHECK_THROWS_AS(run_temporal({}, rig.gate, backend), std::invalid_argument);

  std::vector<ReplayEntry> unordered;
  unordered.push_back(trace_entry("t1", "Write a poem.", "2026-02-03T10:00:00Z"));
  unordered.push_back(trace_entry("t2", "Write a song.", "2026-02-03T09:00:00Z"));
  CHECK_THROWS_AS(run_temporal(unordered, rig.gate, backend),
                  std::invalid_argument);

  std::vector<ReplayEntry> bare;
  bare.push_back(trace_entry("t1", "Write a poem.", "2026-02-03T09:00:00Z"));
  bare[0].timestamp.reset();
  CHECK_THROWS_AS(run_temporal(bare, rig.gate, backend),
                  std::invalid_argument);
}

TEST_CASE("a nondeterministic backend shows up as regressions") {
  TemporalRig rig;
  FlakyBackend backend;
  std::vector<ReplayEntry> trace;
  trace.push_back(trace_entry("t1", "Write a poem about rust.",
                              "2026-02-03T09:00:00Z"));
  trace.push_back(trace_entry("t2", "Write a poem about moss.",
                              "2026-02-03T09:01:00Z"));

  const TraceReport report = run_temporal(trace, rig.gate, backend);
  CHECK(report.gated_calls == 2);
  CHECK(report.regressions == 2);
}

TEST_CASE("trace reports serialize to json") {
  TemporalRig rig;
  ReferenceBackend backend;
  std::vector<ReplayEntry> trace;
  trace.push_back(trace_entry("t1", "What is 2+2?", "2026-02-03T09:00:00Z",
                              Category::kTrivial));
  const TraceReport report = run_temporal(trace, rig.gate, backend);
  const auto parsed = nlohmann::json::parse(trace_report_to_json(report));
  CHECK(parsed.at("entries").get<std::size_t>() == 1);
  CHECK(parsed.at("avoidance").get<double>() == doctest::Approx(1.0));
  CHECK(parsed.at("regressions").get<std::size_t>() == 0);
}
