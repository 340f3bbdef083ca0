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

#include "mfee/fingerprint.hpp"

#include <cstdio>

#include "mfee/hash.hpp"

namespace mfee {

std::string fingerprint_serialization(std::string_view model,
                                      double temperature, long long max_tokens,
                                      long long seed) {
  char temp_buf[64];
  std::snprintf(temp_buf, sizeof(temp_buf), "%.6f", temperature);
  std::string out;
  out.reserve(model.size() + 48);
  out.append(model);
  out.push_back('|');
  out.append(temp_buf);
  out.push_back('|');
  out.append(std::to_string(max_tokens));
  out.push_back('|');
  out.append(std::to_string(seed));
  return out;
}

std::uint64_t config_fingerprint(std::string_view model, double temperature,
                                 long long max_tokens, long long seed) {
  return fnv1a64(fingerprint_serialization(model, temperature, max_tokens, seed));
}

std::uint64_t config_fingerprint(const Request& request) {
  return config_fingerprint(request.model, request.temperature,
                            request.max_tokens, request.seed);
}

}  // namespace mfee
