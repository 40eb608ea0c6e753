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

#include <optional>
#include <string>
#include <string_view>

#include "edgegate/codec/cloud_record.hpp"
#include "edgegate/codec/event_out.hpp"
#include "edgegate/core/device.hpp"
#include "edgegate/core/time.hpp"
#include "edgegate/core/types.hpp"
#include "edgegate/safety/flame.hpp"
#include "edgegate/safety/kalman.hpp"
#include "edgegate/safety/rolling_window.hpp"

namespace edgegate::safety {

enum class SafetyEventKind { kFlameDetected, kFlowAnomaly, kStatus, kPersonnelScan };

struct SafetyContext {
  std::optional<Uid> uid;
  std::optional<double> flow_lpm;
  std::optional<double> intensity;
  std::optional<double> threshold;
  std::optional<std::string> location;
};

// Builds the record for a safety event. flame_detected needs intensity,
// flow_anomaly needs flow, personnel_scan needs uid; throws kMissingField
// otherwise. Flows are rendered as two-decimal strings, counts as integers.
// The record carries no seq; the caller assigns one.
codec::CloudRecord emit_safety_event(const DeviceId& device, SafetyEventKind kind,
                                     const SafetyContext& context, Timestamp at);

std::string format_flow(double lpm);

struct SafetyConfig {
  FlameParams flame;
  double kalman_q = 0.01;
  double kalman_r = 1.0;
  std::size_t window_capacity = RollingWindow::kDefaultCapacity;
  // How long a personnel scan stays attached to subsequent safety events.
  Millis personnel_context{300'000};
  std::string location = "Safety_Zone";
  std::string flame_alert_pattern = "flame_alarm";
  std::string flow_alert_pattern = "flow_warning";

  void validate() const;  // throws kConfigError
};

struct FlameObservation {
  std::optional<double> threshold;  // absent for the first sample
  double filtered_ambient = 0.0;
  bool detected = false;
  bool onset = false;  // rising edge; a record was emitted
};

struct FlowObservation {
  double mean = 0.0;  // window statistics the sample was judged against
  double stddev = 0.0;
  bool window_full = false;
  bool anomaly = false;
  bool onset = false;
  double filtered = 0.0;
};

// Per-device safety analytics. Flame onsets and flow-anomaly onsets emit one
// record each; sustained conditions do not repeat until they clear.
class SafetyMonitor {
 public:
  SafetyMonitor(DeviceIdentity& device, SafetyConfig config, codec::EventOut& out);

  // Ambient is Kalman-smoothed before entering the threshold.
  FlameObservation on_flame_sample(const FlameSample& raw);

  // The sample is judged against the window before being pushed into it.
  FlowObservation on_flow_sample(double lpm, Timestamp at);

  // Returns the uid on success, nullopt on a malformed read.
  std::optional<Uid> on_personnel_scan(std::string_view uid_raw, Timestamp at);

  void emit_status(Timestamp at);

  const RollingWindow& window() const { return window_; }
  std::optional<Uid> personnel_at(Timestamp at) const;

 private:
  void publish(SafetyEventKind kind, SafetyContext context, Timestamp at);

  DeviceIdentity& device_;
  SafetyConfig config_;
  codec::EventOut& out_;
  RollingWindow window_;
  ScalarKalman ambient_filter_;
  ScalarKalman flow_filter_;
  std::optional<FlameSample> previous_flame_;
  bool flame_active_ = false;
  bool anomaly_active_ = false;
  double last_intensity_ = 0.0;
  double last_filtered_flow_ = 0.0;
  std::optional<Uid> personnel_;
  Timestamp personnel_seen_at_;
};

}  // namespace edgegate::safety
