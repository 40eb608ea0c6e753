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

#include <bitset>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>

#include "edgegate/core/time.hpp"

namespace edgegate {

// 4-byte card identifier, canonically 8 uppercase hex characters.
class Uid {
 public:
  // Accepts either case; throws kMalformedUid on wrong length or non-hex input.
  static Uid parse(std::string_view raw);
  static bool is_well_formed(std::string_view raw);
  static Uid from_bits(std::uint32_t bits);

  const std::string& value() const { return value_; }

  friend auto operator<=>(const Uid&, const Uid&) = default;

 private:
  explicit Uid(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

// "<role>_<number>", e.g. AC_001.
class DeviceId {
 public:
  static DeviceId parse(std::string_view raw);  // throws kInvalidArgument
  static bool is_well_formed(std::string_view raw);

  const std::string& value() const { return value_; }

  friend auto operator<=>(const DeviceId&, const DeviceId&) = default;

 private:
  explicit DeviceId(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

class WeekdaySet {
 public:
  constexpr WeekdaySet() = default;
  WeekdaySet(std::initializer_list<Weekday> days) {
    for (Weekday d : days) insert(d);
  }
  static WeekdaySet all();
  static WeekdaySet weekdays();  // Monday..Friday

  void insert(Weekday d) { bits_.set(static_cast<std::size_t>(d)); }
  bool contains(Weekday d) const { return bits_.test(static_cast<std::size_t>(d)); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  friend bool operator==(const WeekdaySet&, const WeekdaySet&) = default;

 private:
  std::bitset<kWeekdayCount> bits_;
};

// Per-UID authorization: a closed daily window [window_start, window_end]
// in seconds-of-day, valid only on allowed_days. An empty day set never grants.
class AccessPolicy {
 public:
  // Throws kInvalidPolicy if a bound is outside [0, 86400) or start > end.
  AccessPolicy(Uid uid, std::int64_t window_start, std::int64_t window_end,
               WeekdaySet allowed_days);

  const Uid& uid() const { return uid_; }
  std::int64_t window_start() const { return window_start_; }
  std::int64_t window_end() const { return window_end_; }
  const WeekdaySet& allowed_days() const { return allowed_days_; }

  friend bool operator==(const AccessPolicy&, const AccessPolicy&) = default;

 private:
  Uid uid_;
  std::int64_t window_start_;
  std::int64_t window_end_;
  WeekdaySet allowed_days_;
};

}  // namespace edgegate

template <>
struct std::hash<edgegate::Uid> {
  std::size_t operator()(const edgegate::Uid& u) const noexcept {
    return std::hash<std::string>{}(u.value());
  }
};

template <>
struct std::hash<edgegate::DeviceId> {
  std::size_t operator()(const edgegate::DeviceId& d) const noexcept {
    return std::hash<std::string>{}(d.value());
  }
};
