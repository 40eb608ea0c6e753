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

#include <string_view>
#include <vector>

#include "edgegate/core/time.hpp"

namespace edgegate::auth {

enum class GateState { kClosed, kOpening, kOpen, kClosing };

std::string_view to_string(GateState s);

struct GateTransition {
  Timestamp at;
  GateState from;
  GateState to;
  int angle_deg;

  friend bool operator==(const GateTransition&, const GateTransition&) = default;
};

// Servo-driven gate. Transitions are legal only along
// Closed -> Opening -> Open -> Closing -> Closed. Servo travel is treated as
// instantaneous, so a cycle is fully described by its open and close instants.
class GateActuator {
 public:
  GateActuator(int closed_angle_deg = 0, int open_angle_deg = 90);

  // Records Closed->Opening->Open at open_at and Open->Closing->Closed at
  // open_at + hold. Throws kInvalidArgument if the gate is still open at
  // open_at or hold <= 0.
  void cycle(Timestamp open_at, Millis hold);

  GateState state_at(Timestamp t) const;
  int angle_at(Timestamp t) const;
  bool closed_at(Timestamp t) const { return state_at(t) == GateState::kClosed; }

  // Instant the most recent cycle closes; epoch if never cycled.
  Timestamp closes_at() const { return close_at_; }

  const std::vector<GateTransition>& transitions() const { return log_; }
  std::size_t cycles() const { return cycles_; }

 private:
  void transition(GateState to, Timestamp at, int angle);

  int closed_angle_;
  int open_angle_;
  GateState state_ = GateState::kClosed;
  Timestamp open_at_;
  Timestamp close_at_;
  std::size_t cycles_ = 0;
  std::vector<GateTransition> log_;
};

}  // namespace edgegate::auth
