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

#include "edgegate/auth/gate.hpp"

#include <algorithm>
#include <iterator>

#include "edgegate/core/error.hpp"

namespace edgegate::auth {

std::string_view to_string(GateState s) {
  switch (s) {
    case GateState::kClosed: return "closed";
    case GateState::kOpening: return "opening";
    case GateState::kOpen: return "open";
    case GateState::kClosing: return "closing";
  }
  return "unknown";
}

GateActuator::GateActuator(int closed_angle_deg, int open_angle_deg)
    : closed_angle_(closed_angle_deg), open_angle_(open_angle_deg) {
  const auto valid = [](int a) { return a >= 0 && a <= 180; };
  if (!valid(closed_angle_deg) || !valid(open_angle_deg)) {
    throw Error(ErrorCode::kInvalidArgument, "servo angles must be within 0..180");
  }
}

void GateActuator::transition(GateState to, Timestamp at, int angle) {
  const bool legal = (state_ == GateState::kClosed && to == GateState::kOpening) ||
                     (state_ == GateState::kOpening && to == GateState::kOpen) ||
                     (state_ == GateState::kOpen && to == GateState::kClosing) ||
                     (state_ == GateState::kClosing && to == GateState::kClosed);
  if (!legal) {
    throw Error(ErrorCode::kInvalidArgument, std::string("illegal gate transition ") +
                                                 std::string(to_string(state_)) + " -> " +
                                                 std::string(to_string(to)));
  }
  log_.push_back({at, state_, to, angle});
  state_ = to;
}

void GateActuator::cycle(Timestamp open_at, Millis hold) {
  if (hold <= Millis::zero()) throw Error(ErrorCode::kInvalidArgument, "hold must be > 0");
  if (cycles_ > 0 && open_at < close_at_) {
    throw Error(ErrorCode::kInvalidArgument, "gate is not closed");
  }
  transition(GateState::kOpening, open_at, closed_angle_);
  transition(GateState::kOpen, open_at, open_angle_);
  transition(GateState::kClosing, open_at + hold, open_angle_);
  transition(GateState::kClosed, open_at + hold, closed_angle_);
  open_at_ = open_at;
  close_at_ = open_at + hold;
  ++cycles_;
}

GateState GateActuator::state_at(Timestamp t) const {
  // Last transition at or before t; both transitions sharing an instant
  // collapse to the later one.
  const auto it = std::upper_bound(log_.begin(), log_.end(), t,
                                   [](Timestamp v, const GateTransition& g) { return v < g.at; });
  if (it == log_.begin()) return GateState::kClosed;
  return std::prev(it)->to;
}

int GateActuator::angle_at(Timestamp t) const {
  return state_at(t) == GateState::kOpen ? open_angle_ : closed_angle_;
}

}  // namespace edgegate::auth
