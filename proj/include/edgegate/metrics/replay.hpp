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

#include <cstdint>
#include <string>
#include <vector>

#include "edgegate/sim/trace.hpp"

namespace edgegate::metrics {

struct ReplayMismatch {
  std::uint64_t trace_seq = 0;
  std::string kind;
  std::string detail;
};

struct ReplayCheck {
  std::uint64_t decisions_checked = 0;
  std::uint64_t flame_onsets_checked = 0;
  std::uint64_t flow_anomalies_checked = 0;
  std::vector<ReplayMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

// Re-derives every logged decision from the inputs recorded beside it:
// access outcomes from the policy and request time, flame onsets from the
// two samples and the threshold parameters, flow anomalies from a batch
// recomputation over the logged window.
ReplayCheck verify_trace(const sim::EventTrace& trace);

}  // namespace edgegate::metrics
