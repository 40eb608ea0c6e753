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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "edgegate/core/clock.hpp"
#include "edgegate/core/time.hpp"
#include "edgegate/sync/backoff.hpp"
#include "edgegate/sync/outbox.hpp"

namespace edgegate::sync {

struct SendResult {
  enum class Status { kAck, kNack, kTimeout };

  Status status = Status::kTimeout;
  std::uint64_t row_index = 0;  // valid for kAck
  Millis elapsed{0};
};

std::string_view to_string(SendResult::Status s);

// Request/response port to the sink: send(bytes) -> Ack(row) | Nack | Timeout.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual SendResult send(std::string_view bytes, Timestamp now) = 0;
};

struct DeliveryReceipt {
  std::string key;
  std::uint64_t row_index = 0;
  Timestamp acked_at;

  friend bool operator==(const DeliveryReceipt&, const DeliveryReceipt&) = default;
};

struct InFlight {
  std::string key;
  std::uint32_t attempt = 0;
  Timestamp sent_at;
  Timestamp completes_at;
  SendResult result;
};

struct StepOutcome {
  std::optional<DeliveryReceipt> receipt;
  std::optional<OutboxEntry> delivered;  // the popped entry on ack
  std::optional<OutboxEntry> dead_letter;
  // Backoff applied before the next attempt; zero after an ack.
  Millis backoff{0};
  // When the next send should start; empty when the queue is drained.
  std::optional<Timestamp> next_attempt_at;
};

// Head-of-line store-and-forward flusher for one device's outbox. A send is
// split into begin_send()/finish() so a discrete-event driver can let
// simulated time pass between them; flush() runs the same steps against a
// Clock.
class SyncClient {
 public:
  SyncClient(OutboxQueue& queue, Transport& transport, RetryPolicy policy);

  // Sends the head record. Returns nullopt when the queue is empty.
  std::optional<InFlight> begin_send(Timestamp now);

  // Applies the result of a send started by begin_send(). Must be called
  // before the next begin_send(). A result for a record that is no longer at
  // the head (evicted by overflow) is discarded.
  StepOutcome finish(const InFlight& in_flight);

  // Delivers until the queue is empty or `until` passes, sleeping through
  // backoff on `clock`. Returns receipts in delivery order.
  std::vector<DeliveryReceipt> flush(Clock& clock, std::optional<Timestamp> until = std::nullopt);

  const std::vector<OutboxEntry>& dead_letters() const { return dead_letters_; }
  std::uint64_t delivered() const { return delivered_; }
  std::uint64_t sends() const { return sends_; }
  std::uint64_t failed_sends() const { return failed_sends_; }
  // Acks for keys that had already been receipted.
  std::uint64_t duplicate_acks() const { return duplicate_acks_; }
  const RetryPolicy& policy() const { return policy_; }

 private:
  OutboxQueue& queue_;
  Transport& transport_;
  RetryPolicy policy_;
  std::unordered_map<std::string, std::uint64_t> acked_rows_;
  std::vector<OutboxEntry> dead_letters_;
  std::uint64_t delivered_ = 0;
  std::uint64_t sends_ = 0;
  std::uint64_t failed_sends_ = 0;
  std::uint64_t duplicate_acks_ = 0;
};

}  // namespace edgegate::sync
