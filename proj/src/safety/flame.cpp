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

#include "edgegate/safety/flame.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::safety {

void FlameParams::validate() const {
  if (!(t_base > 0.0)) throw Error(ErrorCode::kConfigError, "flame.t_base must be > 0");
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0) {
    throw Error(ErrorCode::kConfigError, "flame weights must be >= 0");
  }
}

double flame_threshold(const FlameSample& prev, const FlameSample& curr,
                       const FlameParams& params) {
  if (curr.at <= prev.at) {
    throw Error(ErrorCode::kNonPositiveInterval, "flame samples must be strictly increasing in time");
  }
  const double dt_s = static_cast<double>((curr.at - prev.at).count()) / 1000.0;
  const double slope = (curr.intensity - prev.intensity) / dt_s;
  return params.alpha * params.t_base + params.beta * slope + params.gamma * curr.ambient;
}

}  // namespace edgegate::safety
