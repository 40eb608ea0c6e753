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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "edgegate/core/error.hpp"
#include "edgegate/safety/flame.hpp"
#include "edgegate/safety/kalman.hpp"
#include "edgegate/safety/monitor.hpp"
#include "edgegate/safety/rolling_window.hpp"

namespace edgegate::safety {
namespace {

const Timestamp kT0 = Timestamp::from_civil(2024, 1, 15, 14, 30, 45);

FlameSample at(double intensity, double ambient, Millis offset) { return {intensity, ambient, kT0 + offset}; }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(FlameThreshold, Examples) {
  const FlameParams p;
  EXPECT_DOUBLE_EQ(flame_threshold(at(100, 0, Millis(0)), at(100, 0, Millis(1000)), p), 560.0);
  EXPECT_NEAR(flame_threshold(at(100, 0, Millis(0)), at(200, 400, Millis(1000)), p), 620.0, 1e-9);
  EXPECT_NEAR(flame_threshold(at(200, 0, Millis(0)), at(100, 0, Millis(1000)), p), 540.0, 1e-9);
}

TEST(FlameThreshold, SlopeUsesSeconds) {
  // 10 counts over 100 ms is 100 counts/s.
  EXPECT_NEAR(flame_threshold(at(100, 0, Millis(0)), at(110, 0, Millis(100)), FlameParams{}), 580.0, 1e-9);
}

TEST(FlameThreshold, NonPositiveInterval) {
  try {
    flame_threshold(at(1, 0, Millis(5)), at(1, 0, Millis(5)), FlameParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveInterval);
  }
  EXPECT_THROW(flame_threshold(at(1, 0, Millis(5)), at(1, 0, Millis(4)), FlameParams{}), Error);
}

TEST(FlameThreshold, Superposition) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2000.0);
  const FlameParams p;
  for (int i = 0; i < 2000; ++i) {
    const double slope_a = u(rng) - 1000.0, slope_b = u(rng) - 1000.0;
    const double amb_a = u(rng), amb_b = u(rng);
    const auto th = [&](double slope, double ambient) {
      return flame_threshold(at(500, 0, Millis(0)), at(500 + slope, ambient, Millis(1000)), p);
    };
    const double base = th(0, 0);
    EXPECT_LT(rel(th(slope_a + slope_b, 0) - base, (th(slope_a, 0) - base) + (th(slope_b, 0) - base)), 1e-9);
    EXPECT_LT(rel(th(0, amb_a + amb_b) - base, (th(0, amb_a) - base) + (th(0, amb_b) - base)), 1e-9);
  }
}

TEST(DetectFlame, Examples) {
  EXPECT_TRUE(detect_flame(at(600, 0, Millis(0)), 560));
  EXPECT_TRUE(detect_flame(at(560, 0, Millis(0)), 560));
  EXPECT_FALSE(detect_flame(at(0, 0, Millis(0)), 560));
}

TEST(DetectFlame, Monotone) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1500.0);
  for (int i = 0; i < 10000; ++i) {
    const double th = u(rng), lo = u(rng), hi = lo + u(rng);
    if (detect_flame(at(lo, 0, Millis(0)), th)) EXPECT_TRUE(detect_flame(at(hi, 0, Millis(0)), th));
  }
}

TEST(RollingWindow, EqualValues) {
  RollingWindow w;
  for (int i = 0; i < 30; ++i) w.push(10.0);
  EXPECT_DOUBLE_EQ(w.mean(), 10.0);
  EXPECT_DOUBLE_EQ(w.stddev(), 0.0);
}

TEST(RollingWindow, EvictsOldest) {
  RollingWindow w;
  for (int i = 0; i < 31; ++i) w.push(i);
  EXPECT_EQ(w.size(), 30u);
  EXPECT_DOUBLE_EQ(w.samples().front(), 1.0);
  EXPECT_DOUBLE_EQ(w.samples().back(), 30.0);
}

TEST(RollingWindow, ThreeSamples) {
  RollingWindow w;
  for (double f : {9.0, 10.0, 11.0}) w.push(f);
  EXPECT_DOUBLE_EQ(w.mean(), 10.0);
  EXPECT_NEAR(w.stddev(), std::sqrt(2.0 / 3.0), 1e-12);
}

TEST(RollingWindow, RejectsNegativeAndNaN) {
  RollingWindow w;
  try {
    w.push(-0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNegativeFlow);
  }
  EXPECT_THROW(w.push(std::nan("")), Error);
  EXPECT_EQ(w.size(), 0u);
}

TEST(RollingWindow, IncrementalMatchesBatchAtEveryPush) {
  std::mt19937_64 rng(8);
  std::lognormal_distribution<double> flow(2.3, 0.4);
  RollingWindow w;
  std::deque<double> mirror;
  for (int i = 0; i < 200000; ++i) {
    // Occasional large level shifts stress cancellation in the running sums.
    const double f = (i / 5000) % 2 ? flow(rng) * 1e4 : flow(rng);
    w.push(f);
    mirror.push_back(f);
    if (mirror.size() > 30) mirror.pop_front();
    const double n = static_cast<double>(mirror.size());
    const double mean = std::accumulate(mirror.begin(), mirror.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : mirror) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / n);
    ASSERT_LE(std::abs(w.mean() - mean), 1e-9 * std::abs(mean)) << "push " << i;
    ASSERT_LE(std::abs(w.stddev() - sd), 1e-9 * std::max(sd, 1e-9 * std::abs(mean))) << "push " << i;
  }
}

RollingWindow unit_window() {
  // Thirty samples with mean 10 and population stddev exactly 1.
  std::vector<double> s;
  for (int i = 0; i < 15; ++i) {
    s.push_back(9.0);
    s.push_back(11.0);
  }
  return RollingWindow::from_samples(s);
}

TEST(FlowAnomaly, Examples) {
  const RollingWindow w = unit_window();
  ASSERT_DOUBLE_EQ(w.mean(), 10.0);
  ASSERT_DOUBLE_EQ(w.stddev(), 1.0);
  EXPECT_TRUE(flow_anomaly(w, 13.5));
  EXPECT_FALSE(flow_anomaly(w, 12.9));
  EXPECT_TRUE(flow_anomaly(w, 6.5));

  RollingWindow flat;
  for (int i = 0; i < 30; ++i) flat.push(10.0);
  EXPECT_FALSE(flow_anomaly(flat, 10.0));
  EXPECT_TRUE(flow_anomaly(flat, 10.01));
}

TEST(FlowAnomaly, WarmupNeverFlags) {
  RollingWindow w;
  for (int i = 0; i < 29; ++i) {
    w.push(10.0 + (i % 2));
    EXPECT_FALSE(flow_anomaly(w, 1000.0));
  }
  w.push(10.0);
  EXPECT_TRUE(flow_anomaly(w, 1000.0));
}

TEST(FlowAnomaly, IsPureWithRespectToWindow) {
  const RollingWindow w = unit_window();
  flow_anomaly(w, 50.0);
  EXPECT_EQ(w.samples(), unit_window().samples());
}

TEST(Kalman, ZeroGainLimit) {
  KalmanState s{5.0, 1e-12, 1e-15, 1e12};
  for (double z : {100.0, -100.0, 1e6}) {
    const auto [next, filtered] = kalman_update(s, z);
    EXPECT_NEAR(filtered, 5.0, 1e-9);
    s = next;
  }
}

TEST(Kalman, EqualVariancesGiveHalfGain) {
  KalmanState s{0.0, 2.0, 1e-300, 2.0};
  const auto [next, filtered] = kalman_update(s, 10.0);
  EXPECT_NEAR(filtered, 5.0, 1e-12);
  EXPECT_NEAR(next.variance, 1.0, 1e-12);
}

TEST(Kalman, ConvergesToFixedPoint) {
  KalmanState s{0.0, 1.0, 0.01, 1.0};
  double previous_gap = std::numeric_limits<double>::infinity();
  const double prior = kalman_steady_prior_variance(0.01, 1.0);
  for (int i = 0; i < 1000; ++i) {
    auto [next, filtered] = kalman_update(s, 3.0);
    s = next;
    ASSERT_GT(s.variance, 0.0);
    const double gap = std::abs((s.variance + s.q) - prior);
    ASSERT_LE(gap, previous_gap + 1e-15);
    previous_gap = gap;
  }
  EXPECT_NEAR(s.estimate, 3.0, 1e-6);
  EXPECT_LT(std::abs(s.variance - kalman_steady_posterior_variance(0.01, 1.0)) /
                kalman_steady_posterior_variance(0.01, 1.0),
            0.01);
  // The prior root solves p^2 = q (p + r).
  EXPECT_NEAR(prior * prior, 0.01 * (prior + 1.0), 1e-12);
}

TEST(Kalman, ValidatesState) {
  EXPECT_THROW((KalmanState{0, 0, 0.01, 1}.validate()), Error);
  EXPECT_THROW((KalmanState{0, 1, 0, 1}.validate()), Error);
  EXPECT_THROW((KalmanState{0, 1, 0.01, -1}.validate()), Error);
}

TEST(ScalarKalman, SeedsFromFirstMeasurement) {
  ScalarKalman k(0.01, 1.0);
  EXPECT_FALSE(k.initialized());
  EXPECT_DOUBLE_EQ(k.update(42.0), 42.0);
  EXPECT_TRUE(k.initialized());
}

TEST(EmitSafetyEvent, Examples) {
  const DeviceId dev = DeviceId::parse("SF_001");
  SafetyContext flame;
  flame.intensity = 900;
  const auto r1 = emit_safety_event(dev, SafetyEventKind::kFlameDetected, flame, kT0);
  EXPECT_EQ(r1.event_type, codec::EventType::kFlameDetected);
  EXPECT_EQ(std::get<std::int64_t>(*r1.data.find("intensity")), 900);

  SafetyContext flow;
  flow.flow_lpm = 29.65;
  flow.uid = Uid::parse("A1B2C3D4");
  const auto r2 = emit_safety_event(dev, SafetyEventKind::kFlowAnomaly, flow, kT0);
  EXPECT_EQ(std::get<std::string>(*r2.data.find("flow_lpm")), "29.65");
  EXPECT_EQ(std::get<std::string>(*r2.data.find("uid")), "A1B2C3D4");

  const auto r3 = emit_safety_event(dev, SafetyEventKind::kStatus, {}, kT0 + Millis(250));
  EXPECT_EQ(r3.event_type, codec::EventType::kStatus);
  EXPECT_TRUE(r3.data.empty());
  EXPECT_EQ(r3.timestamp, kT0);
  EXPECT_NO_THROW(codec::validate(r3));
}

TEST(EmitSafetyEvent, MissingField) {
  const DeviceId dev = DeviceId::parse("SF_001");
  for (auto kind : {SafetyEventKind::kFlameDetected, SafetyEventKind::kFlowAnomaly, SafetyEventKind::kPersonnelScan}) {
    try {
      emit_safety_event(dev, kind, {}, kT0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMissingField);
    }
  }
}

class Collect : public codec::EventOut {
 public:
  void record(codec::CloudRecord r) override { records.push_back(std::move(r)); }
  void alert(const codec::Alert& a) override { alerts.push_back(a); }
  std::vector<codec::CloudRecord> records;
  std::vector<codec::Alert> alerts;
};

TEST(SafetyMonitor, FlameOnsetFiresOncePerEpisode) {
  DeviceIdentity dev(DeviceId::parse("SF_001"));
  Collect out;
  SafetyMonitor m(dev, SafetyConfig{}, out);
  int onsets = 0;
  for (int i = 0; i < 100; ++i) {
    const double intensity = (i >= 40 && i < 60) ? 950.0 : 100.0;
    const auto obs = m.on_flame_sample({intensity, 200.0, kT0 + Millis(100 * i)});
    if (obs.onset) ++onsets;
  }
  EXPECT_EQ(onsets, 1);
  ASSERT_EQ(out.records.size(), 1u);
  EXPECT_EQ(out.records[0].event_type, codec::EventType::kFlameDetected);
  EXPECT_EQ(out.alerts.size(), 1u);
}

TEST(SafetyMonitor, FlowAnomalyAttachesPersonnel) {
  DeviceIdentity dev(DeviceId::parse("SF_001"));
  Collect out;
  SafetyMonitor m(dev, SafetyConfig{}, out);
  m.on_personnel_scan("a1b2c3d4", kT0);
  for (int i = 0; i < 30; ++i) m.on_flow_sample(10.0 + (i % 2) * 0.2, kT0 + Millis(1000 * i));
  const auto obs = m.on_flow_sample(29.65, kT0 + Millis(31'000));
  EXPECT_TRUE(obs.anomaly);
  EXPECT_TRUE(obs.onset);
  ASSERT_EQ(out.records.size(), 2u);
  const auto& rec = out.records.back();
  EXPECT_EQ(rec.event_type, codec::EventType::kFlowAnomaly);
  EXPECT_EQ(std::get<std::string>(*rec.data.find("uid")), "A1B2C3D4");
  EXPECT_EQ(rec.seq, 1u);
}

TEST(SafetyMonitor, PersonnelContextExpires) {
  DeviceIdentity dev(DeviceId::parse("SF_001"));
  Collect out;
  SafetyMonitor m(dev, SafetyConfig{}, out);
  m.on_personnel_scan("A1B2C3D4", kT0);
  EXPECT_TRUE(m.personnel_at(kT0 + Millis(300'000)));
  EXPECT_FALSE(m.personnel_at(kT0 + Millis(300'001)));
  EXPECT_FALSE(m.on_personnel_scan("nope", kT0));
}

}  // namespace
}  // namespace edgegate::safety
