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
#include <set>
#include <string>

#include "edgegate/codec/cloud_record.hpp"
#include "edgegate/codec/policy_json.hpp"
#include "edgegate/core/error.hpp"
#include "record_gen.hpp"

namespace edgegate::codec {
namespace {

constexpr const char* kPrettyRecord = R"({
  "device_id": "AC_001",
  "timestamp": "2024-01-15T14:30:45Z",
  "event_type": "access_granted",
  "data": {
    "uid": "A1B2C3D4",
    "gate_status": "open",
    "duration_ms": 4800,
    "location": "Main_Entrance"
  }
})";

CloudRecord sample_record() {
  CloudRecord r{DeviceId::parse("AC_001"), parse_iso8601("2024-01-15T14:30:45Z"), EventType::kAccessGranted,
                {}, 42};
  r.data.add("uid", "A1B2C3D4").add("gate_status", "open").add("duration_ms", std::int64_t{4800}).add(
      "location", "Main_Entrance");
  return r;
}

ErrorCode decode_error(std::string_view bytes) {
  try {
    decode(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decoded: " << bytes;
  return ErrorCode::kInvalidArgument;
}

TEST(Encode, SampleRecordIsCompactAndOrdered) {
  EXPECT_EQ(encode(sample_record()),
            R"({"device_id":"AC_001","timestamp":"2024-01-15T14:30:45Z","event_type":"access_granted",)"
            R"("seq":42,"data":{"uid":"A1B2C3D4","gate_status":"open","duration_ms":4800,)"
            R"("location":"Main_Entrance"}})");
}

TEST(Encode, MinimalStatus) {
  const CloudRecord r{DeviceId::parse("SF_001"), Timestamp::from_seconds(0), EventType::kStatus, {}, 0};
  EXPECT_EQ(encode(r),
            R"({"device_id":"SF_001","timestamp":"1970-01-01T00:00:00Z","event_type":"status","seq":0,"data":{}})");
}

TEST(Encode, FixedPoint) {
  const std::string once = encode(sample_record());
  EXPECT_EQ(encode(decode(once)), once);
}

TEST(Encode, RejectsInvalidRecord) {
  CloudRecord r = sample_record();
  r.timestamp = Timestamp(r.timestamp.seconds_utc(), 5);
  try {
    encode(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRecord);
  }
}

TEST(Encode, EscapesStrings) {
  CloudRecord r = sample_record();
  r.data = DataMap{};
  r.data.add("note", "line\n\"quoted\" \\ caf\xC3\xA9");
  EXPECT_EQ(decode(encode(r)), r);
}

TEST(Decode, PrettyRecordMatchesFields) {
  const CloudRecord r = decode(kPrettyRecord);
  EXPECT_EQ(r.device_id.value(), "AC_001");
  EXPECT_EQ(to_iso8601(r.timestamp), "2024-01-15T14:30:45Z");
  EXPECT_EQ(r.event_type, EventType::kAccessGranted);
  EXPECT_FALSE(r.seq);
  ASSERT_EQ(r.data.size(), 4u);
  EXPECT_EQ(std::get<std::string>(*r.data.find("uid")), "A1B2C3D4");
  EXPECT_EQ(std::get<std::string>(*r.data.find("gate_status")), "open");
  EXPECT_EQ(std::get<std::int64_t>(*r.data.find("duration_ms")), 4800);
  EXPECT_EQ(std::get<std::string>(*r.data.find("location")), "Main_Entrance");
  EXPECT_EQ(r.data.entries()[0].first, "uid");
  EXPECT_EQ(r.data.entries()[3].first, "location");
}

TEST(Decode, PrettyAndCompactAgree) {
  CloudRecord compact = sample_record();
  compact.seq.reset();
  EXPECT_EQ(decode(kPrettyRecord), compact);
}

TEST(Decode, Errors) {
  EXPECT_EQ(decode_error(R"({"device_id":"AC_001","timestamp":"2024-01-15T14:30:45Z","event_type":"teleport","data":{}})"),
            ErrorCode::kUnknownEventType);
  const std::string good = encode(sample_record());
  EXPECT_EQ(decode_error(good.substr(0, good.size() / 2)), ErrorCode::kParseError);
  EXPECT_EQ(decode_error(""), ErrorCode::kParseError);
  EXPECT_EQ(decode_error("[]"), ErrorCode::kSchemaError);
  EXPECT_EQ(decode_error(R"({"device_id":"AC_001","timestamp":"2024-01-15T14:30:45Z","event_type":"status","data":{},"extra":1})"),
            ErrorCode::kSchemaError);
  EXPECT_EQ(decode_error(R"({"device_id":"AC_001","timestamp":"2024-01-15 14:30:45","event_type":"status","data":{}})"),
            ErrorCode::kSchemaError);
  EXPECT_EQ(decode_error(R"({"device_id":"AC_001","event_type":"status","data":{}})"), ErrorCode::kSchemaError);
  EXPECT_EQ(decode_error(R"({"device_id":"AC_001","timestamp":"2024-01-15T14:30:45Z","event_type":"status","data":{"a":1.5}})"),
            ErrorCode::kSchemaError);
  EXPECT_EQ(decode_error(R"({"device_id":"AC_001","timestamp":"2024-01-15T14:30:45Z","event_type":"status","data":{"a":[1]}})"),
            ErrorCode::kSchemaError);
  EXPECT_EQ(decode_error(R"({"device_id":"AC_001","timestamp":"2024-01-15T14:30:45Z","event_type":"status","seq":-1,"data":{}})"),
            ErrorCode::kSchemaError);
  EXPECT_EQ(decode_error(R"({"device_id":"AC_001","timestamp":"2024-01-15T14:30:45Z","event_type":"status","data":{"a":1,"a":2}})"),
            ErrorCode::kSchemaError);
  EXPECT_EQ(decode_error(R"({"device_id":"bad id","timestamp":"2024-01-15T14:30:45Z","event_type":"status","data":{}})"),
            ErrorCode::kSchemaError);
}

TEST(IdempotencyKey, Examples) {
  CloudRecord r = sample_record();
  EXPECT_EQ(idempotency_key(r), "AC_001:42");
  EXPECT_EQ(idempotency_key(decode(encode(r))), "AC_001:42");
  CloudRecord next = r;
  next.seq = 43;
  EXPECT_NE(idempotency_key(r), idempotency_key(next));
  r.seq.reset();
  EXPECT_THROW(idempotency_key(r), Error);
}

TEST(DataMap, RejectsDuplicateKeys) {
  DataMap m;
  m.add("a", std::int64_t{1});
  EXPECT_THROW(m.add("a", std::int64_t{2}), Error);
}

TEST(EventType, AllNamesRoundTrip) {
  std::set<std::string> names;
  for (EventType t : kAllEventTypes) {
    names.insert(std::string(to_string(t)));
    EXPECT_EQ(parse_event_type(to_string(t)), t);
  }
  EXPECT_EQ(names, (std::set<std::string>{"access_granted", "access_denied", "flame_detected", "flow_anomaly",
                                          "status", "personnel_scan"}));
}

TEST(RoundTrip, GeneratedRecords) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 2000; ++i) {
    const CloudRecord r = testing::random_record(rng);
    const std::string bytes = encode(r);
    ASSERT_EQ(decode(bytes), r) << bytes;
    ASSERT_EQ(encode(decode(bytes)), bytes);
  }
}

TEST(Corruption, StructuralByteFlipsAreRejected) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const CloudRecord r = testing::random_record(rng);
    const std::string bytes = encode(r);
    for (std::size_t pos : testing::structural_positions(bytes)) {
      for (int trial = 0; trial < 2; ++trial) {
        std::string bad = bytes;
        unsigned char c;
        do {
          c = static_cast<unsigned char>(rng() & 0xFF);
        } while (c == static_cast<unsigned char>(bytes[pos]));
        bad[pos] = static_cast<char>(c);
        ++checked;
        bool rejected = false;
        try {
          validate(decode(bad));
        } catch (const Error&) {
          rejected = true;
        }
        ASSERT_TRUE(rejected) << "accepted corruption at " << pos << ": " << bad;
      }
    }
  }
  EXPECT_GT(checked, 10000);
}

TEST(PolicyJson, RoundTrip) {
  const AccessPolicy p(Uid::parse("A1B2C3D4"), 9 * 3600, 17 * 3600, WeekdaySet::weekdays());
  const auto j = policy_to_json(p);
  EXPECT_EQ(j.dump(),
            R"({"uid":"A1B2C3D4","window_start":"09:00:00","window_end":"17:00:00","days":["Mon","Tue","Wed","Thu","Fri"]})");
  EXPECT_EQ(policy_from_json(j), p);
  EXPECT_THROW(policy_from_json(nlohmann::ordered_json::parse(R"({"uid":"A1B2C3D4"})")), Error);
}

}  // namespace
}  // namespace edgegate::codec
