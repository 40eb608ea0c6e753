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

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

namespace edgegate::safety {

// Fixed-capacity FIFO of flow readings with O(1) running mean and population
// standard deviation. Statistics are updated with a sliding Welford step and
// re-anchored by an exact two-pass recomputation once per full rotation, so
// rounding error cannot accumulate across a long stream.
class RollingWindow {
 public:
  static constexpr std::size_t kDefaultCapacity = 30;

  explicit RollingWindow(std::size_t capacity = kDefaultCapacity);

  // Builds a window holding exactly these samples (oldest first). Throws
  // kNegativeFlow or kInvalidArgument if there are more samples than capacity.
  static RollingWindow from_samples(std::span<const double> samples,
                                    std::size_t capacity = kDefaultCapacity);

  // Throws kNegativeFlow for f < 0 (and for NaN).
  void push(double f);

  double mean() const { return mean_; }
  double stddev() const;
  std::size_t size() const { return samples_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool full() const { return samples_.size() == capacity_; }
  std::vector<double> samples() const { return {samples_.begin(), samples_.end()}; }

 private:
  void recompute();

  std::size_t capacity_;
  std::deque<double> samples_;
  double mean_ = 0.0;
  double m2_ = 0.0;  // sum of squared deviations from mean_
  double peak_m2_ = 0.0;
  std::size_t since_anchor_ = 0;

  static constexpr double kCancellationRatio = 1e-4;
};

// Three-sigma rule against the last `capacity` samples. Always false while
// the window is warming up.
bool flow_anomaly(const RollingWindow& w, double f_current);

}  // namespace edgegate::safety
