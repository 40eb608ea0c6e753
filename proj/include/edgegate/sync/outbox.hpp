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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "edgegate/codec/cloud_record.hpp"
#include "edgegate/core/time.hpp"

namespace edgegate::sync {

enum class OverflowPolicy { kRejectNew, kDropOldest };

std::string_view to_string(OverflowPolicy p);
std::optional<OverflowPolicy> parse_overflow_policy(std::string_view text);

struct OutboxEntry {
  codec::CloudRecord record;
  std::string key;    // idempotency key
  std::string bytes;  // canonical encoding, fixed at enqueue time
  Timestamp enqueued_at;
  std::uint32_t attempts = 0;
};

// Durable-in-spirit FIFO of records awaiting acknowledgement. Safe for one
// producer thread and one flusher thread.
class OutboxQueue {
 public:
  static constexpr std::size_t kDefaultCapacity = 100'000;

  explicit OutboxQueue(std::size_t capacity = kDefaultCapacity,
                       OverflowPolicy overflow = OverflowPolicy::kRejectNew);

  // Appends r (which must carry a seq). At capacity: kRejectNew throws
  // kQueueFull and leaves the queue untouched; kDropOldest evicts and returns
  // the head. Either way the loss is counted.
  std::optional<OutboxEntry> enqueue(codec::CloudRecord r, Timestamp now);

  std::optional<OutboxEntry> front() const;
  // Increments the head's attempt counter and returns the new value.
  std::uint32_t record_attempt();
  std::optional<OutboxEntry> pop();

  std::size_t depth() const;
  bool empty() const { return depth() == 0; }
  std::size_t capacity() const { return capacity_; }
  // Records offered to enqueue(), including ones lost to overflow, so that
  // enqueued == delivered + depth + dead-lettered + lost always holds.
  std::uint64_t enqueued() const;
  std::uint64_t lost() const;

 private:
  mutable std::mutex mu_;
  std::size_t capacity_;
  OverflowPolicy overflow_;
  std::deque<OutboxEntry> entries_;
  std::uint64_t enqueued_ = 0;
  std::uint64_t lost_ = 0;
};

}  // namespace edgegate::sync
