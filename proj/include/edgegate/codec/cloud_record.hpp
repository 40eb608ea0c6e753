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
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "edgegate/core/time.hpp"
#include "edgegate/core/types.hpp"

namespace edgegate::codec {

enum class EventType {
  kAccessGranted,
  kAccessDenied,
  kFlameDetected,
  kFlowAnomaly,
  kStatus,
  kPersonnelScan,
};

inline constexpr EventType kAllEventTypes[] = {
    EventType::kAccessGranted, EventType::kAccessDenied, EventType::kFlameDetected,
    EventType::kFlowAnomaly,   EventType::kStatus,       EventType::kPersonnelScan};

std::string_view to_string(EventType type);
std::optional<EventType> parse_event_type(std::string_view text);

using DataValue = std::variant<std::string, std::int64_t, bool>;

// Insertion-ordered scalar map with unique keys.
class DataMap {
 public:
  using Entry = std::pair<std::string, DataValue>;

  // Throws kInvalidRecord if the key already exists.
  DataMap& add(std::string key, DataValue value);
  const DataValue* find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const DataMap&, const DataMap&) = default;

 private:
  std::vector<Entry> entries_;
};

// The uplink event envelope. Timestamps carry whole seconds only; seq is the
// per-device sequence number and may be absent on records from producers that
// predate it.
struct CloudRecord {
  DeviceId device_id;
  Timestamp timestamp;
  EventType event_type;
  DataMap data;
  std::optional<std::uint64_t> seq;

  friend bool operator==(const CloudRecord&, const CloudRecord&) = default;
};

// Throws kInvalidRecord describing the first violated invariant.
void validate(const CloudRecord& r);

// Compact canonical JSON: keys device_id, timestamp, event_type, seq, data in
// that order, data in insertion order, no insignificant whitespace.
std::string encode(const CloudRecord& r);

// Accepts compact or pretty-printed JSON. Throws kParseError, kSchemaError or
// kUnknownEventType.
CloudRecord decode(std::string_view bytes);

// "<device_id>:<seq>". Throws kInvalidRecord if seq is absent.
std::string idempotency_key(const CloudRecord& r);

// JSON-value forms of encode/decode, for embedding records in other documents.
nlohmann::ordered_json to_json(const CloudRecord& r);
CloudRecord from_json(const nlohmann::ordered_json& j);

std::string data_value_to_string(const DataValue& v);

}  // namespace edgegate::codec
