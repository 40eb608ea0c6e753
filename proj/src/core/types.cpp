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

#include "edgegate/core/types.hpp"

#include <cctype>
#include <cstdio>

#include "edgegate/core/error.hpp"

namespace edgegate {

bool Uid::is_well_formed(std::string_view raw) {
  if (raw.size() != 8) return false;
  for (char c : raw) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Uid Uid::parse(std::string_view raw) {
  if (!is_well_formed(raw)) {
    throw Error(ErrorCode::kMalformedUid, "expected 8 hex characters, got '" +
                                              std::string(raw) + "'");
  }
  std::string canonical(raw);
  for (char& c : canonical) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return Uid(std::move(canonical));
}

Uid Uid::from_bits(std::uint32_t bits) {
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08X", bits);
  return Uid(buf);
}

bool DeviceId::is_well_formed(std::string_view raw) {
  const auto underscore = raw.rfind('_');
  if (underscore == std::string_view::npos || underscore == 0 ||
      underscore + 1 == raw.size()) {
    return false;
  }
  if (!std::isalpha(static_cast<unsigned char>(raw.front()))) return false;
  for (std::size_t i = 0; i < underscore; ++i) {
    const auto c = static_cast<unsigned char>(raw[i]);
    if (!std::isalnum(c) && c != '_') return false;
  }
  for (std::size_t i = underscore + 1; i < raw.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(raw[i]))) return false;
  }
  return true;
}

DeviceId DeviceId::parse(std::string_view raw) {
  if (!is_well_formed(raw)) {
    throw Error(ErrorCode::kInvalidArgument,
                "device id must look like <role>_<number>, got '" + std::string(raw) + "'");
  }
  return DeviceId(std::string(raw));
}

WeekdaySet WeekdaySet::all() {
  WeekdaySet s;
  for (int i = 0; i < kWeekdayCount; ++i) s.insert(static_cast<Weekday>(i));
  return s;
}

WeekdaySet WeekdaySet::weekdays() {
  return {Weekday::kMonday, Weekday::kTuesday, Weekday::kWednesday, Weekday::kThursday,
          Weekday::kFriday};
}

AccessPolicy::AccessPolicy(Uid uid, std::int64_t window_start, std::int64_t window_end,
                           WeekdaySet allowed_days)
    : uid_(std::move(uid)),
      window_start_(window_start),
      window_end_(window_end),
      allowed_days_(allowed_days) {
  const auto in_day = [](std::int64_t s) { return s >= 0 && s < kSecondsPerDay; };
  if (!in_day(window_start) || !in_day(window_end)) {
    throw Error(ErrorCode::kInvalidPolicy, "window bound outside [0, 86400)");
  }
  if (window_start > window_end) {
    throw Error(ErrorCode::kInvalidPolicy,
                "overnight window not supported; split it into two policies");
  }
}

}  // namespace edgegate
