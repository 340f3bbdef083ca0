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

#include <random>
#include <string>

#include "mfee/fingerprint.hpp"
#include "mfee/hash.hpp"
#include "mfee/types.hpp"

namespace {

// Oracle: the same algorithm written the dumb way, byte at a time over an
// explicit buffer, with the constants typed out rather than shared with the
// implementation. Reference digests below were computed with an external
// FNV-1a implementation.
std::uint64_t oracle_fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    h = (h ^ static_cast<unsigned char>(bytes[i])) * 1099511628211ULL;
  }
  return h;
}

}  // namespace

TEST_CASE("fnv1a64 matches known vectors") {
  // Standard FNV-1a test vectors.
  CHECK(mfee::fnv1a64("") == 14695981039346656037ULL);
  CHECK(mfee::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(mfee::fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("fnv1a64 agrees with the byte-loop oracle on random strings") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::string s(rng() % 64, '\0');
    for (auto& c : s) c = static_cast<char>(rng() % 256);
    CHECK(mfee::fnv1a64(s) == oracle_fnv1a64(s));
  }
}

TEST_CASE("fnv1a64 is incremental") {
  const std::string a = "meaning";
  const std::string b = "-first";
  CHECK(mfee::fnv1a64(b, mfee::fnv1a64(a)) == mfee::fnv1a64(a + b));
  CHECK(mfee::fnv1a64_byte('x', mfee::fnv1a64("pre")) ==
        mfee::fnv1a64("prex"));
}

TEST_CASE("hex16 zero pads to 16 lowercase digits") {
  CHECK(mfee::hex16(0) == "0000000000000000");
  CHECK(mfee::hex16(0xABCDEF) == "0000000000abcdef");
  CHECK(mfee::hex16(~0ULL) == "ffffffffffffffff");
}

TEST_CASE("config fingerprint hashes the serialized tuple") {
  // The serialization is pinned: model|temperature to six decimals|...
  CHECK(mfee::fingerprint_serialization("m", 0.0, 100, 7) ==
        "m|0.000000|100|7");
  CHECK(mfee::config_fingerprint("m", 0.0, 100, 7) ==
        oracle_fnv1a64("m|0.000000|100|7"));

  mfee::Request request;
  request.request_id = "r";
  request.prompt = "irrelevant";
  request.model = "mfee-ref";
  request.temperature = 0.25;
  request.max_tokens = 64;
  request.seed = 42;
  CHECK(mfee::config_fingerprint(request) ==
        oracle_fnv1a64("mfee-ref|0.250000|64|42"));
}

TEST_CASE("config fingerprint separates neighboring configs") {
  const auto base = mfee::config_fingerprint("m", 0.0, 100, 7);
  CHECK(mfee::config_fingerprint("m", 0.0, 100, 8) != base);
  CHECK(mfee::config_fingerprint("m", 0.0, 101, 7) != base);
  CHECK(mfee::config_fingerprint("m", 0.1, 100, 7) != base);
  CHECK(mfee::config_fingerprint("n", 0.0, 100, 7) != base);
  // Field boundaries are delimited, so shifting characters across the
  // boundary changes the digest.
  CHECK(mfee::config_fingerprint("m1", 0.0, 100, 7) !=
        mfee::config_fingerprint("m", 10.0, 100, 7));
}
