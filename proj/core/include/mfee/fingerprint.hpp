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

#include <cstdint>
#include <string>
#include <string_view>

#include "mfee/types.hpp"

namespace mfee {

// Generation-config fingerprint: FNV-1a 64 over
//   "<model>|<temperature>|<max_tokens>|<seed>"
// with the temperature printed at a fixed six decimal places so that any
// writer in any language produces identical bytes. Cache keys pair this
// fingerprint with the canonical prompt; two configs collide only if every
// generation-relevant parameter matches.
std::uint64_t config_fingerprint(std::string_view model, double temperature,
                                 long long max_tokens, long long seed);

std::uint64_t config_fingerprint(const Request& request);

// The exact serialization that gets hashed, exposed for verification.
std::string fingerprint_serialization(std::string_view model,
                                      double temperature, long long max_tokens,
                                      long long seed);

}  // namespace mfee
