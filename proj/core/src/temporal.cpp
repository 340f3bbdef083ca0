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

#include <set>
#include <stdexcept>
#include <unordered_map>

#include "eval_internal.hpp"
#include "mfee/dispatch.hpp"
#include "mfee/eval.hpp"
#include "mfee/fingerprint.hpp"

namespace mfee::eval {

TraceReport run_temporal(const std::vector<ReplayEntry>& trace,
                         const Gate& gate, Backend& backend) {
  if (trace.empty()) {
    throw std::invalid_argument("temporal trace is empty");
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!trace[i].timestamp) {
      throw std::invalid_argument("temporal entry lacks a timestamp: " +
                                  trace[i].request.request_id);
    }
    // ISO 8601 UTC strings order lexicographically.
    if (i > 0 && *trace[i].timestamp < *trace[i - 1].timestamp) {
      throw std::invalid_argument("temporal trace is not time-ordered at " +
                                  trace[i].request.request_id);
    }
  }

  TraceReport report;
  report.entries = trace.size();

  // The ungated reference system executes every distinct request once and
  // replays byte-identical repeats from a verbatim log.
  std::set<std::string> distinct_prompts;
  for (const ReplayEntry& entry : trace) {
    distinct_prompts.insert(entry.request.prompt);
  }
  report.baseline_calls = distinct_prompts.size();

  if (ResponseCache* cache = gate.cache()) cache->clear();
  std::unordered_map<std::string, std::string> shadow;

  for (const ReplayEntry& entry : trace) {
    const GateResult result = gate.evaluate(entry.request);
    const std::string output =
        dispatch(result.outcome, entry.request, backend).text;
    ++report.decision_counts[result.outcome.decision];

    if (result.outcome.decision == Decision::kRender) {
      ++report.gated_calls;
      if (output != backend.generate(entry.request)) ++report.regressions;
      shadow[detail::shadow_key(result.canonical_key, entry.request)] = output;
      if (ResponseCache* cache = gate.cache()) {
        cache->store(result.canonical_key, config_fingerprint(entry.request),
                     output);
      }
    } else {
      const auto verdict =
          detail::validate_bounded(gate, entry.request, result, output, shadow);
      if (!verdict.valid) ++report.regressions;
    }
  }

  if (report.baseline_calls > report.gated_calls) {
    report.avoided_calls = report.baseline_calls - report.gated_calls;
  }
  if (report.baseline_calls > 0) {
    report.avoidance = static_cast<double>(report.avoided_calls) /
                       static_cast<double>(report.baseline_calls);
  }
  return report;
}

}  // namespace mfee::eval
