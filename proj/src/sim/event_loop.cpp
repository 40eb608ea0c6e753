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

#include "edgegate/sim/event_loop.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::sim {

void SimClock::sleep_until(Timestamp t) {
  if (t <= now_) return;
  if (!queue_.empty() && queue_.top().due < t) {
    throw Error(ErrorCode::kInvalidArgument, "sleep_until would skip a pending event");
  }
  now_ = t;
}

void SimClock::schedule(Timestamp due, Action action) {
  if (due < now_) {
    throw Error(ErrorCode::kInvalidArgument, "cannot schedule an event in the past");
  }
  queue_.push(Event{due, next_order_++, std::move(action)});
}

bool SimClock::step() {
  if (queue_.empty()) return false;
  // Moving out of top() is safe: the element is popped before anything else
  // inspects it.
  Event event = std::move(const_cast<Event&>(queue_.top()));
  queue_.pop();
  now_ = event.due;
  ++dispatched_;
  event.action();
  return true;
}

void SimClock::run_until(Timestamp end) {
  while (!queue_.empty() && queue_.top().due <= end) step();
  if (now_ < end) now_ = end;
}

}  // namespace edgegate::sim
