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

#include "edgegate/codec/policy_json.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::codec {

nlohmann::ordered_json policy_to_json(const AccessPolicy& p) {
  nlohmann::ordered_json j;
  j["uid"] = p.uid().value();
  j["window_start"] = format_time_of_day(p.window_start());
  j["window_end"] = format_time_of_day(p.window_end());
  auto days = nlohmann::ordered_json::array();
  for (int i = 0; i < kWeekdayCount; ++i) {
    const auto d = static_cast<Weekday>(i);
    if (p.allowed_days().contains(d)) days.push_back(std::string(to_string(d)).substr(0, 3));
  }
  j["days"] = std::move(days);
  return j;
}

AccessPolicy policy_from_json(const nlohmann::ordered_json& j) {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::kSchemaError, what); };
  if (!j.is_object()) fail("policy must be an object");
  for (const char* key : {"uid", "window_start", "window_end"}) {
    if (!j.contains(key) || !j[key].is_string()) fail(std::string("policy.") + key + " must be a string");
  }
  if (!j.contains("days") || !j["days"].is_array()) fail("policy.days must be an array");
  WeekdaySet days;
  for (const auto& d : j["days"]) {
    if (!d.is_string()) fail("policy.days entries must be strings");
    const auto day = parse_weekday(d.get<std::string>());
    if (!day) fail("unknown weekday '" + d.get<std::string>() + "'");
    days.insert(*day);
  }
  std::int64_t start = 0, end = 0;
  try {
    start = parse_time_of_day(j["window_start"].get<std::string>());
    end = parse_time_of_day(j["window_end"].get<std::string>());
  } catch (const Error& e) {
    fail(e.what());
  }
  return AccessPolicy(Uid::parse(j["uid"].get<std::string>()), start, end, days);
}

}  // namespace edgegate::codec
