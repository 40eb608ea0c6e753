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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edgegate/codec/cloud_record.hpp"
#include "edgegate/core/time.hpp"
#include "edgegate/core/types.hpp"

namespace edgegate::sink {

inline constexpr std::string_view kDefaultToken = "edgegate-dev-token";

struct SheetRow {
  std::uint64_t row_index = 0;
  codec::CloudRecord record;
  std::string key;
  Timestamp received_at;
};

struct AppendAck {
  std::uint64_t row_index = 0;
  bool duplicate = false;
};

// Mock spreadsheet: an append-only row log deduplicated by idempotency key,
// plus the uid -> policy table the readers query. All calls are serialized.
class SheetSink {
 public:
  explicit SheetSink(std::string token = std::string(kDefaultToken));

  // Throws kUnauthorized, kUnavailable, or the codec's decode errors
  // (kParseError / kSchemaError / kUnknownEventType). A key already present
  // returns the original row without appending.
  AppendAck append(std::string_view token, std::string_view record_bytes, Timestamp received_at);

  // nullopt for an unknown uid. Throws kUnauthorized, kUnavailable.
  std::optional<AccessPolicy> query_policy(std::string_view token, const Uid& uid, Timestamp now);

  void provision(const AccessPolicy& policy);

  // Fault injection: requests at times in [start, end) fail with kUnavailable.
  void add_outage(Timestamp start, Timestamp end);
  void set_unavailable(bool unavailable);

  // Header plus one line per row: row_index,device_id,timestamp,event_type,seq,data
  // where data is "key=value" pairs joined by ';'.
  std::string export_csv() const;

  std::vector<SheetRow> rows() const;
  std::size_t row_count() const;
  std::uint64_t duplicate_appends() const;
  bool has_key(std::string_view key) const;
  const std::string& token() const { return token_; }

  // Persisted form: {"rows":[...], "authz":[...]}.
  nlohmann::ordered_json state_to_json() const;
  static std::unique_ptr<SheetSink> from_state_json(const nlohmann::ordered_json& j, std::string token);

 private:
  bool unavailable_at(Timestamp t) const;
  void check_token(std::string_view token) const;

  mutable std::mutex mu_;
  std::string token_;
  std::vector<SheetRow> rows_;
  std::unordered_map<std::string, std::uint64_t> seen_keys_;
  std::unordered_map<std::string, std::uint64_t> next_auto_seq_;
  std::map<Uid, AccessPolicy> authz_;
  std::vector<std::pair<Timestamp, Timestamp>> outages_;
  bool unavailable_ = false;
  std::uint64_t duplicate_appends_ = 0;
};

std::string export_csv(const std::vector<SheetRow>& rows);

}  // namespace edgegate::sink
