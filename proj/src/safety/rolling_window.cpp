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

#include "edgegate/safety/rolling_window.hpp"

#include <algorithm>
#include <cmath>

#include "edgegate/core/error.hpp"

namespace edgegate::safety {

RollingWindow::RollingWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error(ErrorCode::kInvalidArgument, "window capacity must be > 0");
}

RollingWindow RollingWindow::from_samples(std::span<const double> samples,
                                          std::size_t capacity) {
  if (samples.size() > capacity) {
    throw Error(ErrorCode::kInvalidArgument, "more samples than window capacity");
  }
  RollingWindow w(capacity);
  for (double f : samples) w.push(f);
  return w;
}

void RollingWindow::push(double f) {
  if (!(f >= 0.0)) throw Error(ErrorCode::kNegativeFlow, "flow must be >= 0");

  if (samples_.size() < capacity_) {
    samples_.push_back(f);
    const double n = static_cast<double>(samples_.size());
    const double delta = f - mean_;
    mean_ += delta / n;
    m2_ += delta * (f - mean_);
  } else {
    const double old = samples_.front();
    samples_.pop_front();
    samples_.push_back(f);
    const double old_mean = mean_;
    mean_ += (f - old) / static_cast<double>(capacity_);
    m2_ += (f - old) * (f - mean_ + old - old_mean);
  }

  // Evicting a large outlier cancels most of m2_; the running sums then carry
  // the outlier's rounding error, so start over from the samples.
  peak_m2_ = std::max(peak_m2_, m2_);
  if (++since_anchor_ >= capacity_ || m2_ < kCancellationRatio * peak_m2_) recompute();
}

void RollingWindow::recompute() {
  since_anchor_ = 0;
  if (samples_.empty()) {
    mean_ = m2_ = 0.0;
    return;
  }
  double sum = 0.0;
  for (double x : samples_) sum += x;
  mean_ = sum / static_cast<double>(samples_.size());
  double m2 = 0.0;
  for (double x : samples_) m2 += (x - mean_) * (x - mean_);
  m2_ = m2;
  peak_m2_ = m2;
}

double RollingWindow::stddev() const {
  if (samples_.empty() || m2_ <= 0.0) return 0.0;
  return std::sqrt(m2_ / static_cast<double>(samples_.size()));
}

bool flow_anomaly(const RollingWindow& w, double f_current) {
  if (!w.full()) return false;
  return std::abs(f_current - w.mean()) > 3.0 * w.stddev();
}

}  // namespace edgegate::safety
