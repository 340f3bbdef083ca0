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

#include <stdexcept>
#include <string>
#include <string_view>

#include "mfee/types.hpp"

namespace mfee {

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Execution plane. Implementations must be deterministic for a fixed
// (prompt, seed, max_tokens) triple or byte-equivalence checks are
// meaningless.
class Backend {
 public:
  virtual ~Backend() = default;

  // Returns the generated output, or throws BackendError.
  virtual std::string generate(const Request& request) = 0;

  virtual std::string_view kind() const = 0;
};

// Deterministic stand-in for a real model. Output layout:
//
//   GEN:<digest>:<prefix>
//
// where <digest> is 16 lowercase hex digits of FNV-1a 64 over the prompt
// bytes, 0x1F, the seed in ASCII decimal, 0x1F, and max_tokens in ASCII
// decimal; <prefix> is the first 48 codepoints of the prompt. Two prompts
// differing in a single byte produce visibly different outputs, which is
// what makes byte-equivalence violations detectable in tests.
class ReferenceBackend final : public Backend {
 public:
  std::string generate(const Request& request) override;
  std::string_view kind() const override { return "reference"; }
};

inline constexpr std::size_t kReferencePrefixCodepoints = 48;

// Synthetic wall-clock model for sizing the execution plane in reports.
// Latency scales linearly in the whitespace token count of the output.
struct LatencyProfile {
  std::string name;
  double base_ms = 0.0;
  double per_token_ms = 0.0;
};

// Desk-scale profile calibrated to a 124M-parameter decoder on CPU.
LatencyProfile gpt2_scale_profile();
// Profile calibrated to a 9B-parameter decoder behind an RPC hop.
LatencyProfile nine_b_scale_profile();

int whitespace_token_count(std::string_view text);
double simulate_exec_latency_ms(const LatencyProfile& profile,
                                std::string_view output);

}  // namespace mfee
