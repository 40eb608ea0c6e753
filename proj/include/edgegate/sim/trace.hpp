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
#include <string_view>
#include <vector>

#include <json.hpp>

#include "edgegate/core/time.hpp"

namespace edgegate::sim {

// Event kinds written by the simulator.
namespace trace_kind {
inline constexpr std::string_view kSimStart = "sim_start";
inline constexpr std::string_view kSimEnd = "sim_end";
inline constexpr std::string_view kPartitionStart = "partition_start";
inline constexpr std::string_view kPartitionEnd = "partition_end";
inline constexpr std::string_view kCardRead = "card_read";
inline constexpr std::string_view kAuthDecision = "auth_decision";
inline constexpr std::string_view kGateOpen = "gate_open";
inline constexpr std::string_view kGateClose = "gate_close";
inline constexpr std::string_view kAlert = "alert";
inline constexpr std::string_view kEnqueue = "enqueue";
inline constexpr std::string_view kQueueFull = "queue_full";
inline constexpr std::string_view kDropped = "dropped";
inline constexpr std::string_view kSend = "send";
inline constexpr std::string_view kAck = "ack";
inline constexpr std::string_view kDeadLetter = "dead_letter";
inline constexpr std::string_view kFlameOnset = "flame_onset";
inline constexpr std::string_view kFlowAnomaly = "flow_anomaly";
inline constexpr std::string_view kPersonnelScan = "personnel_scan";
inline constexpr std::string_view kQueueSample = "queue_sample";
}  // namespace trace_kind

struct TraceEvent {
  Timestamp t;
  std::uint64_t seq = 0;
  std::string kind;
  std::string device;  // empty for scenario-wide events
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// Totally ordered event log. One JSON object per line:
//   {"seq":N,"t_ms":...,"t":"<iso>","kind":"...","device":"...",<fields...>}
class EventTrace {
 public:
  void add(Timestamp t, std::string_view kind, std::string device,
           nlohmann::ordered_json fields = nlohmann::ordered_json::object());

  const std::vector<TraceEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  std::string to_jsonl() const;
  // Throws kParseError.
  static EventTrace from_jsonl(std::string_view text);

  friend bool operator==(const EventTrace&, const EventTrace&) = default;

 private:
  std::vector<TraceEvent> events_;
};

}  // namespace edgegate::sim
