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

#include "mfee/types.hpp"

namespace mfee {

// Accounting exchange rate: 1000 ms of latency costs one value unit. A
// correct answer worth 1.0 that took 3 ms nets utility 0.997.
inline constexpr double kMsPerValueUnit = 1000.0;

// Total latency charged to an action. Only RENDER pays the execution cost;
// every action pays the gate cost.
double action_cost_ms(Decision decision, double gate_ms, double exec_ms);

// Utility = [correct] * value - cost, with cost converted from milliseconds
// to value units. This is an accounting identity over measured quantities,
// not an optimization target.
double action_utility(const CostModel& model,
                      double ms_per_value_unit = kMsPerValueUnit);

}  // namespace mfee
