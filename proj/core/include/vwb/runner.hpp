// Copyright 2026 The vwb Authors
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

#ifndef VWB_RUNNER_HPP_
#define VWB_RUNNER_HPP_

#include "vwb/report.hpp"
#include "vwb/scenario.hpp"

namespace vwb {

struct RunOptions {
  unsigned threads = 1;  // 0 picks the hardware concurrency
};

// Runs one operation of a scenario. Errors raised by the operation are
// recorded as its verdict (the error code); nothing is thrown.
OperationResult run_operation(const Scenario& s, const OperationSpec& op, const ScenarioConfig& cfg);

// Validates cfg, then runs every operation on a pool of worker threads.
// Results land in input order regardless of the thread count.
Report run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

}  // namespace vwb

#endif  // VWB_RUNNER_HPP_
