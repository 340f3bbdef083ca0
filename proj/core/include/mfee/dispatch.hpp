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

#include "mfee/backend.hpp"
#include "mfee/types.hpp"

namespace mfee {

// Execution failed for a request that was correctly routed to RENDER.
class DispatchError : public std::runtime_error {
 public:
  DispatchError(std::string request_id, const std::string& message)
      : std::runtime_error(message), request_id_(std::move(request_id)) {}

  const std::string& request_id() const noexcept { return request_id_; }

 private:
  std::string request_id_;
};

// The gate outcome itself is malformed (e.g. DIRECT without an output).
// This is a programming error upstream, never a data error.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Maps a gate outcome to the response the caller receives. RENDER invokes
// the backend with the request exactly as validated; everything else is
// bounded and never touches the backend:
//   DIRECT  -> the resolver output carried in the outcome
//   NO_OP   -> empty output
//   ABSTAIN -> the fixed refusal text
FinalResponse dispatch(const GateOutcome& outcome, const Request& request,
                       Backend& backend);

}  // namespace mfee
