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

#include "mfee/backend.hpp"

#include "mfee/hash.hpp"
#include "mfee/text.hpp"

namespace mfee {

std::string ReferenceBackend::generate(const Request& request) {
  std::uint64_t digest = fnv1a64(request.prompt);
  digest = fnv1a64_byte(0x1F, digest);
  digest = fnv1a64(std::to_string(request.seed), digest);
  digest = fnv1a64_byte(0x1F, digest);
  digest = fnv1a64(std::to_string(request.max_tokens), digest);

  std::string out;
  out.reserve(4 + 16 + 1 + 64);
  out.append("GEN:");
  out.append(hex16(digest));
  out.push_back(':');
  out.append(codepoint_prefix(request.prompt, kReferencePrefixCodepoints));
  return out;
}

LatencyProfile gpt2_scale_profile() {
  return LatencyProfile{"gpt2-124m-cpu", 187.0, 28.125};
}

LatencyProfile nine_b_scale_profile() {
  return LatencyProfile{"9b-rpc", 805.0, 41.5};
}

int whitespace_token_count(std::string_view text) {
  int tokens = 0;
  bool in_token = false;
  for (char c : text) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (space) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++tokens;
    }
  }
  return tokens;
}

double simulate_exec_latency_ms(const LatencyProfile& profile,
                                std::string_view output) {
  return profile.base_ms + profile.per_token_ms * whitespace_token_count(output);
}

}  // namespace mfee
