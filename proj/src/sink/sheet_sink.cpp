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

#include "edgegate/sink/sheet_sink.hpp"

#include <algorithm>

#include "edgegate/codec/policy_json.hpp"
#include "edgegate/core/error.hpp"

namespace edgegate::sink {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

SheetSink::SheetSink(std::string token) : token_(std::move(token)) {}

void SheetSink::check_token(std::string_view token) const {
  if (token != token_) throw Error(ErrorCode::kUnauthorized, "bad bearer token");
}

bool SheetSink::unavailable_at(Timestamp t) const {
  if (unavailable_) return true;
  return std::any_of(outages_.begin(), outages_.end(),
                     [&](const auto& w) { return t >= w.first && t < w.second; });
}

AppendAck SheetSink::append(std::string_view token, std::string_view record_bytes,
                            Timestamp received_at) {
  std::lock_guard lock(mu_);
  check_token(token);
  if (unavailable_at(received_at)) throw Error(ErrorCode::kUnavailable, "sink outage");

  codec::CloudRecord record = codec::decode(record_bytes);
  const std::string device = record.device_id.value();
  if (!record.seq) {
    // Producers without sequence numbers get one from arrival order.
    record.seq = next_auto_seq_[device];
  }
  auto& next = next_auto_seq_[device];
  next = std::max(next, *record.seq + 1);

  std::string key = codec::idempotency_key(record);
  if (const auto it = seen_keys_.find(key); it != seen_keys_.end()) {
    ++duplicate_appends_;
    return AppendAck{it->second, true};
  }
  const std::uint64_t index = rows_.size();
  seen_keys_.emplace(key, index);
  rows_.push_back(SheetRow{index, std::move(record), std::move(key), received_at});
  return AppendAck{index, false};
}

std::optional<AccessPolicy> SheetSink::query_policy(std::string_view token, const Uid& uid,
                                                    Timestamp now) {
  std::lock_guard lock(mu_);
  check_token(token);
  if (unavailable_at(now)) throw Error(ErrorCode::kUnavailable, "sink outage");
  const auto it = authz_.find(uid);
  if (it == authz_.end()) return std::nullopt;
  return it->second;
}

void SheetSink::provision(const AccessPolicy& policy) {
  std::lock_guard lock(mu_);
  authz_.insert_or_assign(policy.uid(), policy);
}

void SheetSink::add_outage(Timestamp start, Timestamp end) {
  if (!(start < end)) throw Error(ErrorCode::kInvalidArgument, "outage start must precede end");
  std::lock_guard lock(mu_);
  outages_.emplace_back(start, end);
}

void SheetSink::set_unavailable(bool unavailable) {
  std::lock_guard lock(mu_);
  unavailable_ = unavailable;
}

std::string export_csv(const std::vector<SheetRow>& rows) {
  std::string out = "row_index,device_id,timestamp,event_type,seq,data\n";
  for (const SheetRow& row : rows) {
    std::string data;
    for (const auto& [k, v] : row.record.data.entries()) {
      if (!data.empty()) data += ';';
      data += k + "=" + codec::data_value_to_string(v);
    }
    out += std::to_string(row.row_index) + "," + csv_field(row.record.device_id.value()) + "," +
           to_iso8601(row.record.timestamp) + "," +
           std::string(codec::to_string(row.record.event_type)) + "," +
           (row.record.seq ? std::to_string(*row.record.seq) : std::string()) + "," +
           csv_field(data) + "\n";
  }
  return out;
}

std::string SheetSink::export_csv() const {
  std::lock_guard lock(mu_);
  return sink::export_csv(rows_);
}

std::vector<SheetRow> SheetSink::rows() const {
  std::lock_guard lock(mu_);
  return rows_;
}

std::size_t SheetSink::row_count() const {
  std::lock_guard lock(mu_);
  return rows_.size();
}

std::uint64_t SheetSink::duplicate_appends() const {
  std::lock_guard lock(mu_);
  return duplicate_appends_;
}

bool SheetSink::has_key(std::string_view key) const {
  std::lock_guard lock(mu_);
  return seen_keys_.count(std::string(key)) != 0;
}

nlohmann::ordered_json SheetSink::state_to_json() const {
  std::lock_guard lock(mu_);
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (const SheetRow& row : rows_) {
    nlohmann::ordered_json r;
    r["row_index"] = row.row_index;
    r["received_at_ms"] = row.received_at.epoch_millis();
    r["record"] = codec::to_json(row.record);
    rows.push_back(std::move(r));
  }
  auto authz = nlohmann::ordered_json::array();
  for (const auto& [uid, policy] : authz_) authz.push_back(codec::policy_to_json(policy));
  j["rows"] = std::move(rows);
  j["authz"] = std::move(authz);
  return j;
}

std::unique_ptr<SheetSink> SheetSink::from_state_json(const nlohmann::ordered_json& j, std::string token) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
    throw Error(ErrorCode::kSchemaError, "sink state must have a rows array");
  }
  auto owned = std::make_unique<SheetSink>(std::move(token));
  SheetSink& sink = *owned;
  for (const auto& r : j["rows"]) {
    if (!r.is_object() || !r.contains("record") || !r.contains("received_at_ms")) {
      throw Error(ErrorCode::kSchemaError, "malformed sink row");
    }
    codec::CloudRecord record = codec::from_json(r["record"]);
    if (!record.seq) throw Error(ErrorCode::kSchemaError, "stored rows must carry seq");
    const std::uint64_t index = sink.rows_.size();
    std::string key = codec::idempotency_key(record);
    if (!sink.seen_keys_.emplace(key, index).second) {
      throw Error(ErrorCode::kSchemaError, "duplicate key in sink state: " + key);
    }
    auto& next = sink.next_auto_seq_[record.device_id.value()];
    next = std::max(next, *record.seq + 1);
    sink.rows_.push_back(SheetRow{index, std::move(record), std::move(key),
                                  Timestamp::from_epoch_millis(r["received_at_ms"].get<std::int64_t>())});
  }
  if (j.contains("authz")) {
    for (const auto& p : j["authz"]) sink.provision(codec::policy_from_json(p));
  }
  return owned;
}

}  // namespace edgegate::sink
