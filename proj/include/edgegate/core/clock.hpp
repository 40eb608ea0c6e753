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

#include <atomic>
#include <cstdint>

#include "edgegate/core/time.hpp"

namespace edgegate {

// Injected time source. Simulation code only ever sees this interface.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
  // Blocks (or advances simulated time) until t. No-op if t <= now().
  virtual void sleep_until(Timestamp t) = 0;
};

// Manually advanced clock; sleep_until jumps straight to the target.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(Timestamp start = {}) : now_(start) {}

  Timestamp now() const override { return now_; }
  void sleep_until(Timestamp t) override {
    if (t > now_) now_ = t;
  }
  void advance(Millis d) { now_ = now_ + d; }

 private:
  Timestamp now_;
};

// Reads the system clock. Only the standalone sink server and socket
// transport use it; every read is counted so tests can prove the
// deterministic simulator never touches wall time.
class WallClock final : public Clock {
 public:
  Timestamp now() const override;
  void sleep_until(Timestamp t) override;

  static std::uint64_t reads();

 private:
  static std::atomic<std::uint64_t> reads_;
};

}  // namespace edgegate
