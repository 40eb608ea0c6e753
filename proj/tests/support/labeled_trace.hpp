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

#include "edgegate/metrics/report.hpp"
#include "edgegate/sim/trace.hpp"

namespace edgegate::testing {

// Builds access traces by hand: one card_read and one auth_decision per
// request, labelled in a matching GroundTruth.
class LabeledTrace {
 public:
  explicit LabeledTrace(Timestamp start = Timestamp::from_civil(2024, 1, 15, 9))
      : t_(start) {
    trace.add(t_, sim::trace_kind::kSimStart, "", {{"scenario", "hand"}, {"seed", 0}});
  }

  void decide(bool authorized, bool granted, Millis response = Millis(100), const char* source = "cache") {
    const std::uint64_t req = next_req_++;
    truth.requests[req] = authorized;
    trace.add(t_, sim::trace_kind::kCardRead, "AC_001", {{"req", req}, {"uid_raw", "A1B2C3D4"}});
    trace.add(t_ + response, sim::trace_kind::kAuthDecision, "AC_001",
              {{"req", req},
               {"status", "decided"},
               {"outcome", granted ? "granted" : "denied"},
               {"source", source}});
    t_ = t_ + Millis(10'000);
  }

  void reject(const char* status) {
    const std::uint64_t req = next_req_++;
    truth.requests[req] = false;
    trace.add(t_, sim::trace_kind::kCardRead, "AC_001", {{"req", req}, {"uid_raw", "xyz"}});
    trace.add(t_, sim::trace_kind::kAuthDecision, "AC_001", {{"req", req}, {"status", status}});
    t_ = t_ + Millis(10'000);
  }

  metrics::MetricsReport report() const { return metrics::compute_metrics(trace, truth); }

  sim::EventTrace trace;
  metrics::GroundTruth truth;

 private:
  Timestamp t_;
  std::uint64_t next_req_ = 0;
};

}  // namespace edgegate::testing
