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

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace edgegate {

using Millis = std::chrono::milliseconds;

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr std::int64_t kSecondsPerWeek = 7 * kSecondsPerDay;

// A UTC instant with millisecond resolution.
class Timestamp {
 public:
  constexpr Timestamp() = default;

  // Throws kInvalidArgument unless millis is in [0, 999].
  Timestamp(std::int64_t seconds_utc, int millis);

  static constexpr Timestamp from_seconds(std::int64_t seconds_utc) {
    Timestamp t;
    t.seconds_ = seconds_utc;
    return t;
  }
  static Timestamp from_epoch_millis(std::int64_t total_millis);

  // Civil UTC date-time; throws kInvalidArgument on an impossible date.
  static Timestamp from_civil(int year, unsigned month, unsigned day,
                              int hour = 0, int minute = 0, int second = 0);

  constexpr std::int64_t seconds_utc() const { return seconds_; }
  constexpr int millis() const { return millis_; }
  constexpr std::int64_t epoch_millis() const { return seconds_ * 1000 + millis_; }

  // Drops the sub-second part.
  constexpr Timestamp whole_seconds() const { return from_seconds(seconds_); }

  friend constexpr auto operator<=>(const Timestamp&, const Timestamp&) = default;

  friend Timestamp operator+(Timestamp t, Millis d) {
    return from_epoch_millis(t.epoch_millis() + d.count());
  }
  friend Timestamp operator-(Timestamp t, Millis d) {
    return from_epoch_millis(t.epoch_millis() - d.count());
  }
  friend Millis operator-(Timestamp a, Timestamp b) {
    return Millis(a.epoch_millis() - b.epoch_millis());
  }

 private:
  std::int64_t seconds_ = 0;
  int millis_ = 0;
};

enum class Weekday : std::uint8_t {
  kMonday = 0,
  kTuesday,
  kWednesday,
  kThursday,
  kFriday,
  kSaturday,
  kSunday,
};

inline constexpr int kWeekdayCount = 7;

std::string_view to_string(Weekday day);
// Accepts full names and three-letter abbreviations, case-insensitive.
std::optional<Weekday> parse_weekday(std::string_view text);

Weekday weekday_of(Timestamp t);

// Seconds elapsed since 00:00:00Z of t's UTC day, in [0, 86400).
std::int64_t seconds_of_day(Timestamp t);

// "YYYY-MM-DDTHH:MM:SSZ"; sub-second precision is truncated.
std::string to_iso8601(Timestamp t);

// Strict inverse of to_iso8601. Throws kParseError.
Timestamp parse_iso8601(std::string_view text);

// "HH:MM:SS" or "HH:MM" into seconds-of-day. Throws kParseError.
std::int64_t parse_time_of_day(std::string_view text);
std::string format_time_of_day(std::int64_t seconds_of_day);

}  // namespace edgegate
