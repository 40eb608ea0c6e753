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
#include <functional>
#include <queue>
#include <vector>

#include "edgegate/core/clock.hpp"
#include "edgegate/core/time.hpp"

namespace edgegate::sim {

// Discrete-event clock. Time only moves when the next event is dispatched;
// events due at the same instant fire in scheduling order.
class SimClock final : public Clock {
 public:
  using Action = std::function<void()>;

  explicit SimClock(Timestamp start = {}) : now_(start) {}

  Timestamp now() const override { return now_; }
  // Advances directly to t. Pending events due before t are not skipped:
  // throws kInvalidArgument if one exists.
  void sleep_until(Timestamp t) override;

  // Throws kInvalidArgument if due < now().
  void schedule(Timestamp due, Action action);
  void schedule_after(Millis delay, Action action) { schedule(now_ + delay, std::move(action)); }

  // Dispatches the earliest event. Returns false when none is pending.
  bool step();
  // Dispatches every event due at or before `end`, then advances now() to
  // `end`.
  void run_until(Timestamp end);

  bool idle() const { return queue_.empty(); }
  std::size_t pending() const { return queue_.size(); }
  std::uint64_t dispatched() const { return dispatched_; }

 private:
  struct Event {
    Timestamp due;
    std::uint64_t order;
    Action action;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.due != b.due) return a.due > b.due;
      return a.order > b.order;
    }
  };

  Timestamp now_;
  std::uint64_t next_order_ = 0;
  std::uint64_t dispatched_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

}  // namespace edgegate::sim
