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

#include "edgegate/core/clock.hpp"

#include <chrono>
#include <thread>

namespace edgegate {

std::atomic<std::uint64_t> WallClock::reads_{0};

Timestamp WallClock::now() const {
  reads_.fetch_add(1, std::memory_order_relaxed);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now().time_since_epoch());
  return Timestamp::from_epoch_millis(ms.count());
}

void WallClock::sleep_until(Timestamp t) {
  const Timestamp current = now();
  if (t <= current) return;
  std::this_thread::sleep_for(t - current);
}

std::uint64_t WallClock::reads() { return reads_.load(std::memory_order_relaxed); }

}  // namespace edgegate
