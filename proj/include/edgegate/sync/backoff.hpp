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

#include "edgegate/core/time.hpp"

namespace edgegate::sync {

struct RetryPolicy {
  Millis base{1000};
  Millis max{60'000};
  // Total send attempts per record; unbounded when empty.
  std::optional<std::uint32_t> max_attempts;

  void validate() const;  // throws kConfigError
};

// min(max, base * 2^(n-1)) for attempt n >= 1. Throws kInvalidAttempt for n < 1.
Millis backoff_delay(std::uint32_t n, const RetryPolicy& policy);

}  // namespace edgegate::sync
