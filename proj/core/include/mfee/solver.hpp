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

#include <optional>
#include <string>
#include <string_view>

namespace mfee {

// Closed-grammar solver for requests whose single correct answer is
// computable. Supported templates (matched against the canonical prompt):
//
//   "what is <expr>", "compute <expr>", "<expr> ="
//       integer arithmetic over + - * / (also the Unicode signs for times
//       and minus) with parentheses; division must be exact
//   "convert <int> to <base>"
//       base is hex/hexadecimal, binary/bin, or decimal/dec; the integer
//       literal may itself be decimal, 0x hex, or 0b binary
//   "uppercase '<text>'", "lowercase '<text>'"
//       single or double quoted; returns the converted text without quotes
//
// Returns the answer as a string ("4", "0xff", "HELLO"), or nullopt when
// the prompt is outside the grammar, the parse is ambiguous, a division is
// inexact, or any intermediate overflows 64-bit signed range. A bare number
// with no operator is not a computation and resolves to nullopt.
std::optional<std::string> solve_canonical(std::string_view canonical_key);

// Canonicalizes, then solves.
std::optional<std::string> deterministic_solve(std::string_view prompt);

}  // namespace mfee
