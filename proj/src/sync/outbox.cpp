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

#include "edgegate/sync/outbox.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::sync {

std::string_view to_string(OverflowPolicy p) {
  return p == OverflowPolicy::kRejectNew ? "reject_new" : "drop_oldest";
}

std::optional<OverflowPolicy> parse_overflow_policy(std::string_view text) {
  if (text == "reject_new") return OverflowPolicy::kRejectNew;
  if (text == "drop_oldest") return OverflowPolicy::kDropOldest;
  return std::nullopt;
}

OutboxQueue::OutboxQueue(std::size_t capacity, OverflowPolicy overflow)
    : capacity_(capacity), overflow_(overflow) {
  if (capacity == 0) throw Error(ErrorCode::kInvalidArgument, "outbox capacity must be > 0");
}

std::optional<OutboxEntry> OutboxQueue::enqueue(codec::CloudRecord r, Timestamp now) {
  OutboxEntry entry{r, codec::idempotency_key(r), codec::encode(r), now, 0};
  std::lock_guard lock(mu_);
  ++enqueued_;  // every offered record, accepted or not
  std::optional<OutboxEntry> dropped;
  if (entries_.size() >= capacity_) {
    ++lost_;
    if (overflow_ == OverflowPolicy::kRejectNew) {
      throw Error(ErrorCode::kQueueFull, "outbox full, record " + entry.key + " rejected");
    }
    dropped = std::move(entries_.front());
    entries_.pop_front();
  }
  entries_.push_back(std::move(entry));
  return dropped;
}

std::optional<OutboxEntry> OutboxQueue::front() const {
  std::lock_guard lock(mu_);
  if (entries_.empty()) return std::nullopt;
  return entries_.front();
}

std::uint32_t OutboxQueue::record_attempt() {
  std::lock_guard lock(mu_);
  if (entries_.empty()) throw Error(ErrorCode::kInvalidArgument, "outbox is empty");
  return ++entries_.front().attempts;
}

std::optional<OutboxEntry> OutboxQueue::pop() {
  std::lock_guard lock(mu_);
  if (entries_.empty()) return std::nullopt;
  OutboxEntry e = std::move(entries_.front());
  entries_.pop_front();
  return e;
}

std::size_t OutboxQueue::depth() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::uint64_t OutboxQueue::enqueued() const {
  std::lock_guard lock(mu_);
  return enqueued_;
}

std::uint64_t OutboxQueue::lost() const {
  std::lock_guard lock(mu_);
  return lost_;
}

}  // namespace edgegate::sync
