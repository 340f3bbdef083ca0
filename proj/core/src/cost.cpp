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

#include "mfee/cost.hpp"

#include <stdexcept>

namespace mfee {

double action_cost_ms(Decision decision, double gate_ms, double exec_ms) {
  if (gate_ms < 0.0 || exec_ms < 0.0) {
    throw std::invalid_argument("latency costs must be non-negative");
  }
  return decision == Decision::kRender ? gate_ms + exec_ms : gate_ms;
}

double action_utility(const CostModel& model, double ms_per_value_unit) {
  if (ms_per_value_unit <= 0.0) {
    throw std::invalid_argument("ms_per_value_unit must be positive");
  }
  if (model.gate_cost_ms < 0.0 || model.exec_cost_ms < 0.0) {
    throw std::invalid_argument("latency costs must be non-negative");
  }
  const double realized_value = model.correct ? model.value : 0.0;
  const double cost_units =
      (model.gate_cost_ms + model.exec_cost_ms) / ms_per_value_unit;
  return realized_value - cost_units;
}

}  // namespace mfee
