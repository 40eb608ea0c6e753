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

#include "edgegate/sync/client.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::sync {

std::string_view to_string(SendResult::Status s) {
  switch (s) {
    case SendResult::Status::kAck: return "ack";
    case SendResult::Status::kNack: return "nack";
    case SendResult::Status::kTimeout: return "timeout";
  }
  return "unknown";
}

SyncClient::SyncClient(OutboxQueue& queue, Transport& transport, RetryPolicy policy)
    : queue_(queue), transport_(transport), policy_(policy) {
  policy_.validate();
}

std::optional<InFlight> SyncClient::begin_send(Timestamp now) {
  const auto head = queue_.front();
  if (!head) return std::nullopt;
  InFlight in_flight;
  in_flight.key = head->key;
  in_flight.attempt = queue_.record_attempt();
  in_flight.sent_at = now;
  in_flight.result = transport_.send(head->bytes, now);
  in_flight.completes_at = now + in_flight.result.elapsed;
  ++sends_;
  return in_flight;
}

StepOutcome SyncClient::finish(const InFlight& in_flight) {
  StepOutcome out;
  const auto head = queue_.front();
  if (!head || head->key != in_flight.key) {
    // The record was evicted by a drop-oldest overflow while in flight.
    if (head) out.next_attempt_at = in_flight.completes_at;
    return out;
  }

  if (in_flight.result.status == SendResult::Status::kAck) {
    const auto [it, fresh] = acked_rows_.emplace(in_flight.key, in_flight.result.row_index);
    if (!fresh) ++duplicate_acks_;
    out.receipt = DeliveryReceipt{in_flight.key, it->second, in_flight.completes_at};
    out.delivered = queue_.pop();
    ++delivered_;
    if (!queue_.empty()) out.next_attempt_at = in_flight.completes_at;
    return out;
  }

  ++failed_sends_;
  if (policy_.max_attempts && in_flight.attempt >= *policy_.max_attempts) {
    out.dead_letter = queue_.pop();
    dead_letters_.push_back(*out.dead_letter);
    if (!queue_.empty()) out.next_attempt_at = in_flight.completes_at;
    return out;
  }
  out.backoff = backoff_delay(in_flight.attempt, policy_);
  out.next_attempt_at = in_flight.completes_at + out.backoff;
  return out;
}

std::vector<DeliveryReceipt> SyncClient::flush(Clock& clock, std::optional<Timestamp> until) {
  std::vector<DeliveryReceipt> receipts;
  while (!until || clock.now() <= *until) {
    const auto in_flight = begin_send(clock.now());
    if (!in_flight) break;
    clock.sleep_until(in_flight->completes_at);
    const StepOutcome step = finish(*in_flight);
    if (step.receipt) receipts.push_back(*step.receipt);
    if (!step.next_attempt_at) break;
    clock.sleep_until(*step.next_attempt_at);
  }
  return receipts;
}

}  // namespace edgegate::sync
