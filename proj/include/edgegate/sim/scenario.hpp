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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgegate/auth/engine.hpp"
#include "edgegate/core/time.hpp"
#include "edgegate/core/types.hpp"
#include "edgegate/safety/monitor.hpp"
#include "edgegate/sim/network.hpp"
#include "edgegate/sync/backoff.hpp"
#include "edgegate/sync/outbox.hpp"

namespace edgegate::sim {

enum class DeviceKind { kAccess, kSafety };

struct AccessWorkload {
  double arrivals_per_hour = 0.0;
  Millis min_interarrival{0};
  double authorized_fraction = 0.8;  // presented card is a provisioned one
  double malformed_fraction = 0.0;
  Millis read_delay_min{20};
  Millis read_delay_max{99};
  // Reader misreads: an unauthorized card read as a currently-authorized uid,
  // and an authorized card read as an unprovisioned uid.
  double false_accept_rate = 0.0;
  double false_reject_rate = 0.0;
  std::size_t unknown_pool = 200;
  // Stop generating arrivals after this many; 0 means no cap.
  std::uint64_t max_requests = 0;
};

struct FlameEpisode {
  Millis start;  // offset from scenario start
  Millis duration;
  double peak = 900.0;
  Millis ramp{2000};
};

struct FlameTrace {
  bool enabled = false;
  Millis sample_period{100};
  double baseline = 100.0;
  double noise_stddev = 5.0;
  double ambient = 200.0;
  double ambient_noise = 10.0;
  std::vector<FlameEpisode> episodes;
};

struct FlowInjection {
  Millis start;
  Millis duration;
  double delta = 5.0;
};

struct FlowTrace {
  bool enabled = false;
  Millis sample_period{1000};
  double baseline = 10.0;
  double noise_stddev = 0.2;
  std::vector<FlowInjection> anomalies;
};

struct DeviceConfig {
  DeviceId id = DeviceId::parse("AC_001");
  DeviceKind kind = DeviceKind::kAccess;
  std::optional<std::string> token;  // defaults to the sink token
  auth::AuthConfig auth;
  safety::SafetyConfig safety;
  sync::RetryPolicy retry;
  Millis send_timeout{5000};
  std::size_t queue_capacity = sync::OutboxQueue::kDefaultCapacity;
  sync::OverflowPolicy overflow = sync::OverflowPolicy::kRejectNew;
  AccessWorkload access;
  FlameTrace flame;
  FlowTrace flow;
  double personnel_scans_per_hour = 0.0;
  Millis status_interval{0};  // 0 disables status records
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  Timestamp start = Timestamp::from_civil(2024, 1, 15);
  Millis duration{3'600'000};
  Millis drain_grace{3'600'000};
  Millis queue_sample_period{60'000};
  std::string sink_token = "edgegate-dev-token";
  std::vector<Partition> sink_outages;
  NetworkModel network;
  std::vector<AccessPolicy> authz;
  std::vector<DeviceConfig> devices;

  // Throws kConfigError listing every problem found, one per line.
  void validate() const;
};

// Throws kConfigError with field-level diagnostics.
Scenario parse_scenario(const std::string& yaml_text);
Scenario load_scenario(const std::string& path);

}  // namespace edgegate::sim
