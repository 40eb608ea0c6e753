// Copyright 2026 The EdgeGate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>

#include "edgegate/metrics/report.hpp"
#include "edgegate/sim/scenario.hpp"
#include "edgegate/sim/trace.hpp"
#include "edgegate/sink/sheet_sink.hpp"

namespace edgegate::sim {

struct RunResult {
  EventTrace trace;
  metrics::GroundTruth truth;
  metrics::MetricsReport report;
  std::unique_ptr<sink::SheetSink> sink;
};

// Executes the scenario against a simulated clock. The result is a pure
// function of the scenario: no wall-clock reads, no shared global state.
// Throws kConfigError if the scenario does not validate.
RunResult run(const Scenario& scenario);

}  // namespace edgegate::sim
