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

#include <string>
#include <unordered_map>

#include "mfee/gate.hpp"
#include "mfee/types.hpp"

// Validation helpers shared by the replay and temporal runners. Not part of
// the installed API.

namespace mfee::eval::detail {

struct Verdict {
  bool valid = true;
  std::string note;
};

// Cache-shadow key: canonical prompt plus config fingerprint, mirroring the
// response cache's own composite key.
std::string shadow_key(const std::string& canonical, const Request& request);

// Revalidates a bounded decision with harness-side state only: the shadow
// map mirrors what the run rendered and cached, so a cache hit is checked
// against it rather than against the gate's own cache.
Verdict validate_bounded(
    const Gate& gate, const Request& request, const GateResult& result,
    const std::string& output,
    const std::unordered_map<std::string, std::string>& shadow);

}  // namespace mfee::eval::detail
