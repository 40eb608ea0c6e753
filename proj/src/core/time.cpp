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

#include "edgegate/core/time.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

#include "edgegate/core/error.hpp"

namespace edgegate {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

constexpr std::array<std::string_view, kWeekdayCount> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

bool parse_fixed_digits(std::string_view text, std::size_t pos, std::size_t count,
                        int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    value = value * 10 + (text[i] - '0');
  }
  out = value;
  return true;
}

}  // namespace

Timestamp::Timestamp(std::int64_t seconds_utc, int millis)
    : seconds_(seconds_utc), millis_(millis) {
  if (millis < 0 || millis > 999) {
    throw Error(ErrorCode::kInvalidArgument,
                "millis out of range: " + std::to_string(millis));
  }
}

Timestamp Timestamp::from_epoch_millis(std::int64_t total_millis) {
  return Timestamp(floor_div(total_millis, 1000),
                   static_cast<int>(floor_mod(total_millis, 1000)));
}

Timestamp Timestamp::from_civil(int year, unsigned month, unsigned day, int hour,
                                int minute, int second) {
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                     std::chrono::day{day}};
  if (!ymd.ok() || hour < 0 || hour > 23 || minute < 0 || minute > 59 ||
      second < 0 || second > 59) {
    throw Error(ErrorCode::kInvalidArgument, "invalid civil date-time");
  }
  const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  return from_seconds(days * kSecondsPerDay + hour * 3600 + minute * 60 + second);
}

std::string_view to_string(Weekday day) {
  return kWeekdayNames.at(static_cast<std::size_t>(day));
}

std::optional<Weekday> parse_weekday(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
    std::string name(kWeekdayNames[i]);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == name || lowered == name.substr(0, 3)) {
      return static_cast<Weekday>(i);
    }
  }
  return std::nullopt;
}

Weekday weekday_of(Timestamp t) {
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  const std::int64_t days = floor_div(t.seconds_utc(), kSecondsPerDay);
  return static_cast<Weekday>(floor_mod(days + 3, kWeekdayCount));
}

std::int64_t seconds_of_day(Timestamp t) {
  return floor_mod(t.seconds_utc(), kSecondsPerDay);
}

std::string to_iso8601(Timestamp t) {
  using namespace std::chrono;
  const std::int64_t days = floor_div(t.seconds_utc(), kSecondsPerDay);
  const std::int64_t sod = seconds_of_day(t);
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(sod / 3600),
                static_cast<int>((sod / 60) % 60), static_cast<int>(sod % 60));
  return buf;
}

Timestamp parse_iso8601(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  const bool shape_ok =
      text.size() == 20 && parse_fixed_digits(text, 0, 4, y) && text[4] == '-' &&
      parse_fixed_digits(text, 5, 2, mo) && text[7] == '-' &&
      parse_fixed_digits(text, 8, 2, d) && text[10] == 'T' &&
      parse_fixed_digits(text, 11, 2, h) && text[13] == ':' &&
      parse_fixed_digits(text, 14, 2, mi) && text[16] == ':' &&
      parse_fixed_digits(text, 17, 2, s) && text[19] == 'Z';
  if (!shape_ok) {
    throw Error(ErrorCode::kParseError, "malformed timestamp '" + std::string(text) + "'");
  }
  try {
    return Timestamp::from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d),
                                 h, mi, s);
  } catch (const Error&) {
    throw Error(ErrorCode::kParseError, "impossible timestamp '" + std::string(text) + "'");
  }
}

std::int64_t parse_time_of_day(std::string_view text) {
  int h = 0, m = 0, s = 0;
  bool ok = false;
  if (text.size() == 5) {
    ok = parse_fixed_digits(text, 0, 2, h) && text[2] == ':' &&
         parse_fixed_digits(text, 3, 2, m);
  } else if (text.size() == 8) {
    ok = parse_fixed_digits(text, 0, 2, h) && text[2] == ':' &&
         parse_fixed_digits(text, 3, 2, m) && text[5] == ':' &&
         parse_fixed_digits(text, 6, 2, s);
  }
  if (!ok || h > 23 || m > 59 || s > 59) {
    throw Error(ErrorCode::kParseError, "malformed time of day '" + std::string(text) + "'");
  }
  return h * 3600 + m * 60 + s;
}

std::string format_time_of_day(std::int64_t sod) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", static_cast<int>(sod / 3600),
                static_cast<int>((sod / 60) % 60), static_cast<int>(sod % 60));
  return buf;
}

}  // namespace edgegate
