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

#include "mfee/text.hpp"

using mfee::canonicalize;

TEST_CASE("canonicalize lowercases and strips terminal punctuation") {
  CHECK(canonicalize("What is the Capital of France?") ==
        "what is the capital of france");
  CHECK(canonicalize("HELLO!!!") == "hello");
  CHECK(canonicalize("done.") == "done");
  // Fixpoint: stripping may expose more terminal punctuation or spaces.
  CHECK(canonicalize("Really?! . ?") == "really");
  CHECK(canonicalize("2+2 = ?") == "2+2 =");
}

TEST_CASE("canonicalize collapses whitespace runs") {
  CHECK(canonicalize("  hello   world  ") == "hello world");
  CHECK(canonicalize("a\t\tb\nc") == "a b c");
  CHECK(canonicalize("\n\n") == "");
  CHECK(canonicalize("") == "");
}

TEST_CASE("canonicalize preserves interior punctuation") {
  CHECK(canonicalize("e.g. this, that; other?") == "e.g. this, that; other");
  CHECK(canonicalize("version 2.0.1") == "version 2.0.1");
}

TEST_CASE("canonicalize applies NFC before anything else") {
  // "é" composed (U+00E9) versus decomposed (e + U+0301) must collide.
  const std::string composed = "caf\xc3\xa9";
  const std::string decomposed = "cafe\xcc\x81";
  CHECK(canonicalize(composed) == canonicalize(decomposed));
  CHECK(canonicalize("CAF\xc3\x89") == canonicalize(decomposed));
}

TEST_CASE("canonicalize handles non-ASCII case folding") {
  CHECK(canonicalize("\xc3\x89" "COLE") == "\xc3\xa9" "cole");  // ÉCOLE -> école
  CHECK(canonicalize("\xce\x91\xce\x92") != "\xce\x91\xce\x92");  // ΑΒ lowers
}

TEST_CASE("canonicalize is idempotent") {
  std::mt19937_64 rng(4242);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .?!,;'";
  for (int trial = 0; trial < 300; ++trial) {
    std::string s(rng() % 40, ' ');
    for (auto& c : s) c = alphabet[rng() % alphabet.size()];
    const std::string once = canonicalize(s);
    CHECK(canonicalize(once) == once);
  }
}

TEST_CASE("codepoint_count counts codepoints, not bytes") {
  CHECK(mfee::codepoint_count("") == 0);
  CHECK(mfee::codepoint_count("abc") == 3);
  CHECK(mfee::codepoint_count("\xc3\xa9") == 1);          // é
  CHECK(mfee::codepoint_count("\xf0\x9f\x98\x80") == 1);  // emoji
}

TEST_CASE("codepoint_prefix never splits a codepoint") {
  const std::string s = "a\xc3\xa9\xf0\x9f\x98\x80z";  // a é emoji z
  CHECK(mfee::codepoint_prefix(s, 0) == "");
  CHECK(mfee::codepoint_prefix(s, 1) == "a");
  CHECK(mfee::codepoint_prefix(s, 2) == "a\xc3\xa9");
  CHECK(mfee::codepoint_prefix(s, 3) == "a\xc3\xa9\xf0\x9f\x98\x80");
  CHECK(mfee::codepoint_prefix(s, 10) == s);
}

TEST_CASE("analyze_text reports alpha and space composition") {
  const auto stats = mfee::analyze_text("ab 12");
  CHECK(stats.codepoints == 5);
  CHECK(stats.alphabetic == 2);
  CHECK(stats.alphanumeric == 4);
  CHECK(stats.non_space == 4);
}

TEST_CASE("to_upper and to_lower round trip ASCII") {
  CHECK(mfee::to_upper("mind the gap") == "MIND THE GAP");
  CHECK(mfee::to_lower("MIND THE GAP") == "mind the gap");
}
