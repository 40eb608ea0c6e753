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

#include <string>

#include "edgegate/codec/cloud_record.hpp"
#include "edgegate/core/time.hpp"

namespace edgegate::codec {

// Local annunciation (buzzer pattern, alarm) raised alongside a record.
struct Alert {
  std::string pattern;
  Timestamp at;
};

// Where device engines publish what they produce.
class EventOut {
 public:
  virtual ~EventOut() = default;
  virtual void record(CloudRecord r) = 0;
  virtual void alert(const Alert& a) = 0;
};

}  // namespace edgegate::codec
