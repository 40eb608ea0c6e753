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

#include "edgegate/codec/cloud_record.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "edgegate/core/error.hpp"

namespace edgegate::codec {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kTopLevelKeys[] = {"device_id", "timestamp", "event_type",
                                              "seq", "data"};

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::kSchemaError, what);
}

const Json& require(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace

std::string_view to_string(EventType type) {
  switch (type) {
    case EventType::kAccessGranted: return "access_granted";
    case EventType::kAccessDenied: return "access_denied";
    case EventType::kFlameDetected: return "flame_detected";
    case EventType::kFlowAnomaly: return "flow_anomaly";
    case EventType::kStatus: return "status";
    case EventType::kPersonnelScan: return "personnel_scan";
  }
  return "unknown";
}

std::optional<EventType> parse_event_type(std::string_view text) {
  for (EventType t : kAllEventTypes) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

DataMap& DataMap::add(std::string key, DataValue value) {
  if (contains(key)) {
    throw Error(ErrorCode::kInvalidRecord, "duplicate data key '" + key + "'");
  }
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}

const DataValue* DataMap::find(std::string_view key) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const Entry& e) { return e.first == key; });
  return it == entries_.end() ? nullptr : &it->second;
}

void validate(const CloudRecord& r) {
  if (!DeviceId::is_well_formed(r.device_id.value())) {
    throw Error(ErrorCode::kInvalidRecord, "bad device id");
  }
  if (r.timestamp.millis() != 0) {
    throw Error(ErrorCode::kInvalidRecord, "record timestamps carry whole seconds only");
  }
  std::set<std::string_view> keys;
  for (const auto& [k, v] : r.data.entries()) {
    if (!keys.insert(k).second) {
      throw Error(ErrorCode::kInvalidRecord, "duplicate data key '" + k + "'");
    }
  }
}

Json to_json(const CloudRecord& r) {
  validate(r);
  Json j = Json::object();
  j["device_id"] = r.device_id.value();
  j["timestamp"] = to_iso8601(r.timestamp);
  j["event_type"] = std::string(to_string(r.event_type));
  if (r.seq) j["seq"] = *r.seq;
  Json data = Json::object();
  for (const auto& [k, v] : r.data.entries()) {
    std::visit([&, &key = k](const auto& x) { data[key] = x; }, v);
  }
  j["data"] = std::move(data);
  return j;
}

std::string encode(const CloudRecord& r) {
  try {
    return to_json(r).dump(-1, ' ', false, Json::error_handler_t::strict);
  } catch (const Json::type_error& e) {
    // Invalid UTF-8 inside a string value.
    throw Error(ErrorCode::kInvalidRecord, e.what());
  }
}

CloudRecord from_json(const Json& j) {
  if (!j.is_object()) schema_error("record must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kTopLevelKeys), std::end(kTopLevelKeys), key) ==
        std::end(kTopLevelKeys)) {
      schema_error("unknown top-level key '" + key + "'");
    }
  }

  const Json& device = require(j, "device_id");
  if (!device.is_string() || !DeviceId::is_well_formed(device.get_ref<const std::string&>())) {
    schema_error("device_id must be a string like AC_001");
  }

  const Json& ts = require(j, "timestamp");
  if (!ts.is_string()) schema_error("timestamp must be a string");
  // parse_iso8601 reports kParseError; surface it as a schema problem.
  Timestamp timestamp;
  try {
    timestamp = parse_iso8601(ts.get_ref<const std::string&>());
  } catch (const Error& e) {
    schema_error(e.what());
  }

  const Json& et = require(j, "event_type");
  if (!et.is_string()) schema_error("event_type must be a string");
  const auto event_type = parse_event_type(et.get_ref<const std::string&>());
  if (!event_type) {
    throw Error(ErrorCode::kUnknownEventType,
                "unknown event_type '" + et.get<std::string>() + "'");
  }

  std::optional<std::uint64_t> seq;
  if (const auto it = j.find("seq"); it != j.end()) {
    if (!it->is_number_unsigned()) schema_error("seq must be a non-negative integer");
    seq = it->get<std::uint64_t>();
  }

  const Json& data_json = require(j, "data");
  if (!data_json.is_object()) schema_error("data must be an object");
  DataMap data;
  for (const auto& [key, value] : data_json.items()) {
    if (value.is_string()) {
      data.add(key, value.get<std::string>());
    } else if (value.is_boolean()) {
      data.add(key, value.get<bool>());
    } else if (value.is_number_unsigned()) {
      const auto u = value.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        schema_error("data value '" + key + "' exceeds int64");
      }
      data.add(key, static_cast<std::int64_t>(u));
    } else if (value.is_number_integer()) {
      data.add(key, value.get<std::int64_t>());
    } else {
      schema_error("data value '" + key + "' must be a string, integer or boolean");
    }
  }

  return CloudRecord{DeviceId::parse(device.get<std::string>()), timestamp, *event_type,
                     std::move(data), seq};
}

CloudRecord decode(std::string_view bytes) {
  // Track keys per open object so duplicates are rejected instead of
  // silently overwritten by the parser.
  std::vector<std::set<std::string>> open_objects;
  std::string duplicate;
  const Json::parser_callback_t track_keys = [&](int /*depth*/, Json::parse_event_t event,
                                                 Json& parsed) {
    switch (event) {
      case Json::parse_event_t::object_start:
        open_objects.emplace_back();
        break;
      case Json::parse_event_t::object_end:
        if (!open_objects.empty()) open_objects.pop_back();
        break;
      case Json::parse_event_t::key:
        if (!open_objects.empty() &&
            !open_objects.back().insert(parsed.get<std::string>()).second &&
            duplicate.empty()) {
          duplicate = parsed.get<std::string>();
        }
        break;
      default:
        break;
    }
    return true;
  };

  Json j;
  try {
    j = Json::parse(bytes.begin(), bytes.end(), track_keys);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!duplicate.empty()) schema_error("duplicate key '" + duplicate + "'");
  return from_json(j);
}

std::string idempotency_key(const CloudRecord& r) {
  if (!r.seq) throw Error(ErrorCode::kInvalidRecord, "record has no seq");
  return r.device_id.value() + ":" + std::to_string(*r.seq);
}

std::string data_value_to_string(const DataValue& v) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, v);
}

}  // namespace edgegate::codec
