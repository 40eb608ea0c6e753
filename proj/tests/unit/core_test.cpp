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

#include <gtest/gtest.h>

#include <random>

#include "edgegate/core/clock.hpp"
#include "edgegate/core/error.hpp"
#include "edgegate/core/time.hpp"
#include "edgegate/core/types.hpp"

namespace edgegate {
namespace {

TEST(Weekday, EpochIsThursday) {
  EXPECT_EQ(weekday_of(Timestamp::from_seconds(0)), Weekday::kThursday);
}

TEST(Weekday, KnownMonday) {
  const Timestamp t = parse_iso8601("2024-01-15T14:30:45Z");
  EXPECT_EQ(weekday_of(t), Weekday::kMonday);
}

// Zeller's congruence, independent of the chrono-based implementation.
Weekday zeller(int y, int m, int d) {
  if (m < 3) {
    m += 12;
    y -= 1;
  }
  const int k = y % 100;
  const int j = y / 100;
  const int h = (d + 13 * (m + 1) / 5 + k + k / 4 + j / 4 + 5 * j) % 7;  // 0 = Saturday
  return static_cast<Weekday>((h + 5) % 7);
}

TEST(Weekday, AgreesWithZellerOverFourCenturies) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> year(1601, 2399), month(1, 12), day(1, 28);
  for (int i = 0; i < 20000; ++i) {
    const int y = year(rng);
    const int m = month(rng);
    const int d = day(rng);
    EXPECT_EQ(weekday_of(Timestamp::from_civil(y, m, d, 12)), zeller(y, m, d)) << y << "-" << m << "-" << d;
  }
}

TEST(Weekday, WeeklyPeriodicity) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> secs(-4'000'000'000, 4'000'000'000);
  for (int i = 0; i < 10000; ++i) {
    const auto s = secs(rng);
    EXPECT_EQ(weekday_of(Timestamp::from_seconds(s)), weekday_of(Timestamp::from_seconds(s + kSecondsPerWeek)));
  }
}

TEST(Weekday, NegativeTimesBeforeEpoch) {
  EXPECT_EQ(weekday_of(Timestamp::from_seconds(-1)), Weekday::kWednesday);
  EXPECT_EQ(weekday_of(Timestamp::from_civil(1969, 12, 29)), Weekday::kMonday);
}

TEST(Weekday, ParseAndFormat) {
  EXPECT_EQ(parse_weekday("Mon"), Weekday::kMonday);
  EXPECT_EQ(parse_weekday("sunday"), Weekday::kSunday);
  EXPECT_EQ(parse_weekday("FRI"), Weekday::kFriday);
  EXPECT_FALSE(parse_weekday("Funday"));
  EXPECT_EQ(to_string(Weekday::kWednesday), "Wednesday");
}

TEST(SecondsOfDay, Examples) {
  EXPECT_EQ(seconds_of_day(Timestamp::from_civil(2024, 1, 15, 0, 0, 0)), 0);
  EXPECT_EQ(seconds_of_day(Timestamp::from_civil(2024, 1, 15, 14, 30, 45)), 14 * 3600 + 30 * 60 + 45);
  EXPECT_EQ(seconds_of_day(Timestamp::from_civil(2024, 1, 15, 23, 59, 59)), 86399);
}

TEST(SecondsOfDay, DayShiftInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> secs(-2'000'000'000, 2'000'000'000);
  for (int i = 0; i < 10000; ++i) {
    const auto t = Timestamp::from_seconds(secs(rng));
    const auto v = seconds_of_day(t);
    ASSERT_GE(v, 0);
    ASSERT_LT(v, kSecondsPerDay);
    for (int k = 1; k <= 3; ++k) {
      EXPECT_EQ(seconds_of_day(Timestamp::from_seconds(t.seconds_utc() + k * kSecondsPerDay)), v);
    }
  }
}

TEST(Timestamp, MillisRange) {
  EXPECT_THROW(Timestamp(0, 1000), Error);
  EXPECT_THROW(Timestamp(0, -1), Error);
  EXPECT_EQ(Timestamp(5, 999).epoch_millis(), 5999);
}

TEST(Timestamp, OrderingFollowsSecondsThenMillis) {
  EXPECT_LT(Timestamp(1, 999), Timestamp(2, 0));
  EXPECT_LT(Timestamp(2, 0), Timestamp(2, 1));
  EXPECT_EQ(Timestamp::from_epoch_millis(-1), Timestamp(-1, 999));
}

TEST(Timestamp, Arithmetic) {
  const Timestamp t(10, 500);
  EXPECT_EQ(t + Millis(600), Timestamp(11, 100));
  EXPECT_EQ(t - Millis(600), Timestamp(9, 900));
  EXPECT_EQ(Timestamp(11, 100) - t, Millis(600));
}

TEST(Iso8601, RoundTrip) {
  const Timestamp t = Timestamp::from_civil(2024, 1, 15, 14, 30, 45);
  EXPECT_EQ(to_iso8601(t), "2024-01-15T14:30:45Z");
  EXPECT_EQ(parse_iso8601("2024-01-15T14:30:45Z"), t);
  EXPECT_EQ(to_iso8601(Timestamp(t.seconds_utc(), 750)), "2024-01-15T14:30:45Z");
}

TEST(Iso8601, RejectsMalformed) {
  for (const char* bad : {"2024-01-15 14:30:45Z", "2024-01-15T14:30:45", "2024-13-01T00:00:00Z",
                          "2024-02-30T00:00:00Z", "2024-01-15T24:00:00Z", "", "garbage"}) {
    EXPECT_THROW(parse_iso8601(bad), Error) << bad;
  }
}

TEST(TimeOfDay, ParseAndFormat) {
  EXPECT_EQ(parse_time_of_day("09:00"), 9 * 3600);
  EXPECT_EQ(parse_time_of_day("17:00:30"), 17 * 3600 + 30);
  EXPECT_EQ(format_time_of_day(52245), "14:30:45");
  EXPECT_THROW(parse_time_of_day("25:00"), Error);
  EXPECT_THROW(parse_time_of_day("9"), Error);
}

TEST(Uid, Canonicalizes) {
  EXPECT_EQ(Uid::parse("A1B2C3D4").value(), "A1B2C3D4");
  EXPECT_EQ(Uid::parse("a1b2c3d4").value(), "A1B2C3D4");
  EXPECT_EQ(Uid::from_bits(0xA1B2C3D4).value(), "A1B2C3D4");
}

TEST(Uid, RejectsMalformed) {
  for (const char* bad : {"A1B2C3", "A1B2C3D4E5", "G1B2C3D4", "", "A1B2 3D4"}) {
    EXPECT_FALSE(Uid::is_well_formed(bad)) << bad;
    try {
      Uid::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedUid);
    }
  }
}

TEST(DeviceId, Pattern) {
  EXPECT_TRUE(DeviceId::is_well_formed("AC_001"));
  EXPECT_TRUE(DeviceId::is_well_formed("SF_12"));
  EXPECT_FALSE(DeviceId::is_well_formed(""));
  EXPECT_FALSE(DeviceId::is_well_formed("AC001"));
  EXPECT_FALSE(DeviceId::is_well_formed("AC_"));
  EXPECT_THROW(DeviceId::parse("_001"), Error);
}

TEST(AccessPolicy, RejectsOvernightAndOutOfRangeWindows) {
  const Uid uid = Uid::parse("A1B2C3D4");
  EXPECT_THROW(AccessPolicy(uid, 20 * 3600, 6 * 3600, WeekdaySet::all()), Error);
  EXPECT_THROW(AccessPolicy(uid, -1, 100, WeekdaySet::all()), Error);
  EXPECT_THROW(AccessPolicy(uid, 0, kSecondsPerDay, WeekdaySet::all()), Error);
  EXPECT_NO_THROW(AccessPolicy(uid, 0, 0, WeekdaySet{}));
}

TEST(ManualClock, AdvancesOnlyForward) {
  ManualClock c(Timestamp::from_seconds(100));
  c.sleep_until(Timestamp::from_seconds(50));
  EXPECT_EQ(c.now(), Timestamp::from_seconds(100));
  c.advance(Millis(1500));
  EXPECT_EQ(c.now(), Timestamp(101, 500));
}

}  // namespace
}  // namespace edgegate
