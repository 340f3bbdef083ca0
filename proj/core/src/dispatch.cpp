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

#include "mfee/dispatch.hpp"

namespace mfee {

FinalResponse dispatch(const GateOutcome& outcome, const Request& request,
                       Backend& backend) {
  if (!outcome_well_formed(outcome)) {
    throw ContractViolation("gate outcome fields do not match its decision for request " +
                            request.request_id);
  }
  switch (outcome.decision) {
    case Decision::kRender:
      try {
        return FinalResponse{ResponseKind::kGenerated, backend.generate(request)};
      } catch (const std::exception& e) {
        throw DispatchError(request.request_id, e.what());
      }
    case Decision::kDirect:
      return FinalResponse{ResponseKind::kDirect, *outcome.direct_output};
    case Decision::kNoOp:
      return FinalResponse{ResponseKind::kEmpty, ""};
    case Decision::kAbstain:
      return FinalResponse{ResponseKind::kRefusal, std::string(kRefusalText)};
  }
  throw ContractViolation("unreachable decision value");
}

}  // namespace mfee
