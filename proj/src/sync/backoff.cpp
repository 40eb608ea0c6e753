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

#include "edgegate/sync/backoff.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::sync {

void RetryPolicy::validate() const {
  if (base <= Millis::zero()) throw Error(ErrorCode::kConfigError, "retry.base_s must be > 0");
  if (max < base) throw Error(ErrorCode::kConfigError, "retry.max_s must be >= retry.base_s");
  if (max_attempts && *max_attempts == 0) {
    throw Error(ErrorCode::kConfigError, "retry.max_attempts must be >= 1 when set");
  }
}

Millis backoff_delay(std::uint32_t n, const RetryPolicy& policy) {
  if (n < 1) throw Error(ErrorCode::kInvalidAttempt, "attempt numbers start at 1");
  // Double until the cap; stops before the shift can overflow.
  std::int64_t delay = policy.base.count();
  for (std::uint32_t i = 1; i < n && delay < policy.max.count(); ++i) delay *= 2;
  return Millis(std::min(delay, policy.max.count()));
}

}  // namespace edgegate::sync
