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
#include <random>
#include <string>

#include "mfee/solver.hpp"

using mfee::deterministic_solve;
using mfee::solve_canonical;

namespace {

// Independent formatting oracles for the conversion answers.
std::string oracle_hex(long long v) {
  char buf[32];
  if (v < 0) {
    std::snprintf(buf, sizeof buf, "-0x%llx", -static_cast<long long>(v));
  } else {
    std::snprintf(buf, sizeof buf, "0x%llx", v);
  }
  return buf;
}

std::string oracle_binary(unsigned long long v) {
  if (v == 0) return "0b0";
  std::string bits;
  while (v != 0) {
    bits.insert(bits.begin(), static_cast<char>('0' + (v & 1)));
    v >>= 1;
  }
  return "0b" + bits;
}

}  // namespace

TEST_CASE("solver evaluates basic arithmetic") {
  CHECK(deterministic_solve("What is 2+2?") == "4");
  CHECK(deterministic_solve("Compute 17*3") == "51");
  CHECK(deterministic_solve("What is (3 + 4) * 2?") == "14");
  CHECK(deterministic_solve("What is 10 - 25?") == "-15");
  CHECK(deterministic_solve("7 * 8 = ?") == "56");
}

TEST_CASE("solver agrees with a native-arithmetic oracle on random input") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const long long a = static_cast<long long>(rng() % 10000) - 5000;
    const long long b = static_cast<long long>(rng() % 10000) - 5000;
    const int op = static_cast<int>(rng() % 3);
    const char symbol = op == 0 ? '+' : op == 1 ? '-' : '*';
    const long long expected = op == 0 ? a + b : op == 1 ? a - b : a * b;
    char prompt[96];
    std::snprintf(prompt, sizeof prompt, "What is %lld %c %lld?", a, symbol, b);
    CHECK(deterministic_solve(prompt) == std::to_string(expected));
  }
}

TEST_CASE("division is exact or refused") {
  CHECK(deterministic_solve("What is 140 / 4?") == "35");
  CHECK(deterministic_solve("What is 10 / 2?") == "5");
  // Inexact division has no single integer answer; the solver must decline
  // rather than round.
  CHECK(!deterministic_solve("What is 7 / 2?").has_value());
  CHECK(!deterministic_solve("What is 10 / 3?").has_value());
  CHECK(!deterministic_solve("What is 1 / 0?").has_value());
}

TEST_CASE("overflow is refused, not wrapped") {
  CHECK(!deterministic_solve("What is 9223372036854775807 + 1?").has_value());
  CHECK(!deterministic_solve("Compute 4000000000 * 4000000000").has_value());
  CHECK(deterministic_solve("What is 9223372036854775807 - 1?") ==
        "9223372036854775806");
}

TEST_CASE("base conversions match the formatting oracle") {
  CHECK(deterministic_solve("Convert 255 to hex") == "0xff");
  CHECK(deterministic_solve("Convert 5 to binary") == "0b101");
  CHECK(deterministic_solve("Convert 0x1f to decimal") == "31");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = static_cast<long long>(rng() % 1000000);
    CHECK(deterministic_solve("Convert " + std::to_string(v) + " to hex") ==
          oracle_hex(v));
    CHECK(deterministic_solve("Convert " + std::to_string(v) + " to binary") ==
          oracle_binary(static_cast<unsigned long long>(v)));
  }
}

TEST_CASE("case conversion requires a quoted operand") {
  CHECK(deterministic_solve("Uppercase 'mind the gap'") == "MIND THE GAP");
  CHECK(deterministic_solve("Lowercase 'LOUD NOISES'") == "loud noises");
  CHECK(!deterministic_solve("Uppercase mind the gap").has_value());
}

TEST_CASE("non-computations fall through") {
  CHECK(!deterministic_solve("What is the capital of France?").has_value());
  CHECK(!deterministic_solve("What is love?").has_value());
  CHECK(!deterministic_solve("Compute the meaning of life").has_value());
  CHECK(!deterministic_solve("Convert my essay into a poem").has_value());
  CHECK(!deterministic_solve("What is pi * 2?").has_value());
  CHECK(!deterministic_solve("").has_value());
}

TEST_CASE("solve_canonical expects canonical input") {
  // Case and terminal punctuation are the canonicalizer's job; the solver
  // only sees canonical keys in the pipeline.
  CHECK(solve_canonical("what is 2+2") == "4");
  CHECK(!solve_canonical("What is 2+2?").has_value());
}
