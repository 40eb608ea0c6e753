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

#include "edgegate/core/types.hpp"

namespace edgegate {

// Identity plus the per-device record sequence used for idempotency keys.
class DeviceIdentity {
 public:
  explicit DeviceIdentity(DeviceId id, std::uint64_t first_seq = 0)
      : id_(std::move(id)), next_seq_(first_seq) {}

  const DeviceId& id() const { return id_; }
  std::uint64_t take_seq() { return next_seq_++; }
  std::uint64_t peek_seq() const { return next_seq_; }

 private:
  DeviceId id_;
  std::uint64_t next_seq_;
};

}  // namespace edgegate
