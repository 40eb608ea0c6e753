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

#include "edgegate/core/time.hpp"

namespace edgegate::safety {

struct FlameSample {
  double intensity = 0.0;  // ADC counts
  double ambient = 0.0;    // same count scale
  Timestamp at;
};

// Adaptive threshold weights. beta multiplies the intensity slope in
// counts/second, so it carries the seconds-to-counts conversion.
struct FlameParams {
  double t_base = 800.0;
  double alpha = 0.7;
  double beta = 0.2;
  double gamma = 0.1;

  void validate() const;  // throws kConfigError
};

// alpha*t_base + beta*dI/dt + gamma*ambient, with dI/dt the backward
// difference between the two samples. Throws kNonPositiveInterval unless
// curr.at > prev.at.
double flame_threshold(const FlameSample& prev, const FlameSample& curr,
                       const FlameParams& params);

// Inclusive: intensity at the threshold counts as flame.
inline bool detect_flame(const FlameSample& curr, double threshold) {
  return curr.intensity >= threshold;
}

}  // namespace edgegate::safety
