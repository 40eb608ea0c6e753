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

#include <utility>

namespace edgegate::safety {

// Scalar random-walk (constant-state) Kalman filter.
struct KalmanState {
  double estimate = 0.0;
  double variance = 1.0;
  double q = 0.01;  // process-noise variance
  double r = 1.0;   // measurement-noise variance

  void validate() const;  // throws kInvalidArgument
};

// One predict/update step; returns the new state and the filtered value.
std::pair<KalmanState, double> kalman_update(const KalmanState& s, double z);

// Steady-state variances on constant input. The predicted (prior) variance p
// solves p^2 = q*(p + r); the updated (posterior) variance is p - q, which
// solves v^2 + q*v = q*r.
double kalman_steady_prior_variance(double q, double r);
double kalman_steady_posterior_variance(double q, double r);

// Convenience wrapper that seeds the estimate from the first measurement.
class ScalarKalman {
 public:
  ScalarKalman(double q, double r, double initial_variance = 1.0);

  double update(double z);
  bool initialized() const { return initialized_; }
  const KalmanState& state() const { return state_; }

 private:
  KalmanState state_;
  bool initialized_ = false;
};

}  // namespace edgegate::safety
