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

#include "edgegate/safety/kalman.hpp"

#include <cmath>

#include "edgegate/core/error.hpp"

namespace edgegate::safety {

void KalmanState::validate() const {
  if (!(variance > 0.0) || !(q > 0.0) || !(r > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "kalman variance, q and r must be > 0");
  }
}

std::pair<KalmanState, double> kalman_update(const KalmanState& s, double z) {
  const double predicted = s.variance + s.q;
  const double gain = predicted / (predicted + s.r);
  KalmanState next = s;
  next.estimate = s.estimate + gain * (z - s.estimate);
  next.variance = (1.0 - gain) * predicted;
  return {next, next.estimate};
}

double kalman_steady_prior_variance(double q, double r) {
  return (q + std::sqrt(q * q + 4.0 * q * r)) / 2.0;
}

double kalman_steady_posterior_variance(double q, double r) {
  return kalman_steady_prior_variance(q, r) - q;
}

ScalarKalman::ScalarKalman(double q, double r, double initial_variance) {
  state_.q = q;
  state_.r = r;
  state_.variance = initial_variance;
  state_.validate();
}

double ScalarKalman::update(double z) {
  if (!initialized_) {
    state_.estimate = z;
    initialized_ = true;
    return z;
  }
  auto [next, filtered] = kalman_update(state_, z);
  state_ = next;
  return filtered;
}

}  // namespace edgegate::safety
