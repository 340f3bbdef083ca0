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

namespace mfee {

// 64-bit FNV-1a. Used everywhere a stable, language-portable digest is
// needed (config fingerprints, the reference backend). Not cryptographic.
inline constexpr std::uint64_t kFnv64OffsetBasis = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnv64Prime = 1099511628211ULL;

constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t state = kFnv64OffsetBasis) {
  for (unsigned char c : bytes) {
    state ^= static_cast<std::uint64_t>(c);
    state *= kFnv64Prime;
  }
  return state;
}

constexpr std::uint64_t fnv1a64_byte(std::uint8_t byte, std::uint64_t state) {
  state ^= static_cast<std::uint64_t>(byte);
  state *= kFnv64Prime;
  return state;
}

// 16 lowercase hex digits, zero padded.
std::string hex16(std::uint64_t value);

}  // namespace mfee
