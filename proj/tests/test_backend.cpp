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

#include <cstdio>
#include <string>

#include "mfee/backend.hpp"
#include "mfee/types.hpp"

namespace {

mfee::Request make_request(const std::string& prompt, long long seed = 12345,
                           int max_tokens = 1000) {
  mfee::Request request;
  request.request_id = "t";
  request.prompt = prompt;
  request.model = "mfee-ref";
  request.seed = seed;
  request.max_tokens = max_tokens;
  return request;
}

// Oracle for the reference output, built from scratch: digest the exact
// byte layout with an independently written FNV loop and format manually.
std::string oracle_reference_output(const std::string& prompt, long long seed,
                                    int max_tokens) {
  std::string payload = prompt;
  payload.push_back('\x1f');
  payload += std::to_string(seed);
  payload.push_back('\x1f');
  payload += std::to_string(max_tokens);

  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : payload) h = (h ^ c) * 1099511628211ULL;

  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(h));

  // First 48 codepoints of the prompt (byte-walk UTF-8 lengths manually).
  std::size_t taken = 0;
  std::size_t bytes = 0;
  while (bytes < prompt.size() && taken < 48) {
    const auto lead = static_cast<unsigned char>(prompt[bytes]);
    std::size_t step = 1;
    if (lead >= 0xF0) {
      step = 4;
    } else if (lead >= 0xE0) {
      step = 3;
    } else if (lead >= 0xC0) {
      step = 2;
    }
    bytes += step;
    ++taken;
  }
  return "GEN:" + std::string(digest) + ":" + prompt.substr(0, bytes);
}

}  // namespace

TEST_CASE("reference backend matches the layout oracle") {
  mfee::ReferenceBackend backend;
  for (const auto* prompt :
       {"Write a haiku about tide pools.", "x",
        "A much longer prompt that definitely exceeds the prefix window "
        "because it keeps going and going"}) {
    const auto request = make_request(prompt);
    CHECK(backend.generate(request) ==
          oracle_reference_output(prompt, 12345, 1000));
  }
  CHECK(backend.generate(make_request("p", 42, 64)) ==
        oracle_reference_output("p", 42, 64));
}

TEST_CASE("reference backend is deterministic and parameter-sensitive") {
  mfee::ReferenceBackend backend;
  const auto request = make_request("Tell me a story.");
  const auto first = backend.generate(request);
  CHECK(backend.generate(request) == first);
  CHECK(backend.generate(make_request("Tell me a story!")) != first);
  CHECK(backend.generate(make_request("Tell me a story.", 54321)) != first);
  CHECK(backend.generate(make_request("Tell me a story.", 12345, 10)) !=
        first);
}

TEST_CASE("prefix truncation counts codepoints, not bytes") {
  mfee::ReferenceBackend backend;
  // 60 two-byte codepoints; the prefix must keep exactly 48 of them.
  std::string prompt;
  for (int i = 0; i < 60; ++i) prompt += "\xc3\xa9";
  const auto output = backend.generate(make_request(prompt));
  const auto last_colon = output.rfind(':');
  const std::string prefix = output.substr(last_colon + 1);
  CHECK(prefix.size() == 48 * 2);
  CHECK(output == oracle_reference_output(prompt, 12345, 1000));
}

TEST_CASE("latency profiles are positive and ordered") {
  const auto small = mfee::gpt2_scale_profile();
  const auto large = mfee::nine_b_scale_profile();
  CHECK(small.base_ms > 0);
  CHECK(small.per_token_ms > 0);
  CHECK(large.base_ms > small.base_ms);
  CHECK(large.per_token_ms > small.per_token_ms);

  const std::string forty_tokens =
      "a b c d e f g h i j a b c d e f g h i j "
      "a b c d e f g h i j a b c d e f g h i j";
  CHECK(mfee::whitespace_token_count(forty_tokens) == 40);
  CHECK(mfee::whitespace_token_count("") == 0);
  CHECK(mfee::whitespace_token_count("  spaced   out  ") == 2);

  CHECK(mfee::simulate_exec_latency_ms(small, forty_tokens) ==
        doctest::Approx(small.base_ms + 40 * small.per_token_ms));
  CHECK(mfee::simulate_exec_latency_ms(large, forty_tokens) >
        mfee::simulate_exec_latency_ms(small, forty_tokens));
}
