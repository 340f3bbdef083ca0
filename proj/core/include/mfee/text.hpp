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

#include <cstddef>
#include <string>
#include <string_view>

namespace mfee {

// Canonicalization collapses surface variation that carries no meaning, so
// that every resolver and cache downstream keys on the same string. Steps,
// in order:
//   1. Unicode NFC normalization (invalid UTF-8 becomes U+FFFD)
//   2. case folding to lowercase (root locale, no language tailoring)
//   3. whitespace runs collapse to a single ASCII space
//   4. leading and trailing whitespace is removed
//   5. terminal '?', '!', '.' characters are stripped, together with any
//      whitespace this exposes, until the tail is stable
//
// "  What is 2+2? " and "WHAT IS 2+2" both canonicalize to "what is 2+2".
std::string canonicalize(std::string_view prompt);

// Number of Unicode codepoints in a UTF-8 string. Malformed sequences count
// one codepoint per offending byte.
std::size_t codepoint_count(std::string_view utf8);

// First `max_codepoints` codepoints of a UTF-8 string, as UTF-8.
std::string codepoint_prefix(std::string_view utf8, std::size_t max_codepoints);

// Codepoint-class tallies used by structural triage.
struct TextStats {
  std::size_t codepoints = 0;
  std::size_t alphabetic = 0;
  std::size_t alphanumeric = 0;
  std::size_t non_space = 0;
};

TextStats analyze_text(std::string_view utf8);

// Root-locale case conversion helpers (used by the deterministic solver).
std::string to_upper(std::string_view utf8);
std::string to_lower(std::string_view utf8);

}  // namespace mfee
