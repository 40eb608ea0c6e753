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

#include <json.hpp>

#include "edgegate/core/types.hpp"

namespace edgegate::codec {

// {"uid":"A1B2C3D4","window_start":"09:00:00","window_end":"17:00:00",
//  "days":["Mon","Tue",...]}
nlohmann::ordered_json policy_to_json(const AccessPolicy& p);
// Throws kSchemaError (or kMalformedUid / kInvalidPolicy for bad values).
AccessPolicy policy_from_json(const nlohmann::ordered_json& j);

}  // namespace edgegate::codec
