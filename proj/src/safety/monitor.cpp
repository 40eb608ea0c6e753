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

#include "edgegate/safety/monitor.hpp"

#include <cmath>
#include <cstdio>

#include "edgegate/core/error.hpp"

namespace edgegate::safety {
namespace {

codec::EventType event_type_for(SafetyEventKind kind) {
  switch (kind) {
    case SafetyEventKind::kFlameDetected: return codec::EventType::kFlameDetected;
    case SafetyEventKind::kFlowAnomaly: return codec::EventType::kFlowAnomaly;
    case SafetyEventKind::kStatus: return codec::EventType::kStatus;
    case SafetyEventKind::kPersonnelScan: return codec::EventType::kPersonnelScan;
  }
  return codec::EventType::kStatus;
}

std::int64_t counts(double v) { return static_cast<std::int64_t>(std::llround(v)); }

}  // namespace

std::string format_flow(double lpm) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", lpm);
  return buf;
}

codec::CloudRecord emit_safety_event(const DeviceId& device, SafetyEventKind kind,
                                     const SafetyContext& context, Timestamp at) {
  const auto missing = [](const char* field) {
    throw Error(ErrorCode::kMissingField, std::string("safety event requires ") + field);
  };
  switch (kind) {
    case SafetyEventKind::kFlameDetected:
      if (!context.intensity) missing("intensity");
      break;
    case SafetyEventKind::kFlowAnomaly:
      if (!context.flow_lpm) missing("flow");
      break;
    case SafetyEventKind::kPersonnelScan:
      if (!context.uid) missing("uid");
      break;
    case SafetyEventKind::kStatus:
      break;
  }

  codec::CloudRecord r{device, at.whole_seconds(), event_type_for(kind), {}, std::nullopt};
  if (context.intensity) r.data.add("intensity", counts(*context.intensity));
  if (context.threshold) r.data.add("threshold", counts(*context.threshold));
  if (context.flow_lpm) r.data.add("flow_lpm", format_flow(*context.flow_lpm));
  if (context.uid) r.data.add("uid", context.uid->value());
  if (context.location) r.data.add("location", *context.location);
  return r;
}

void SafetyConfig::validate() const {
  flame.validate();
  if (!(kalman_q > 0.0) || !(kalman_r > 0.0)) {
    throw Error(ErrorCode::kConfigError, "kalman q and r must be > 0");
  }
  if (window_capacity == 0) throw Error(ErrorCode::kConfigError, "window capacity must be > 0");
  if (personnel_context < Millis::zero()) {
    throw Error(ErrorCode::kConfigError, "personnel context must be >= 0");
  }
}

SafetyMonitor::SafetyMonitor(DeviceIdentity& device, SafetyConfig config, codec::EventOut& out)
    : device_(device),
      config_((config.validate(), std::move(config))),
      out_(out),
      window_(config_.window_capacity),
      ambient_filter_(config_.kalman_q, config_.kalman_r),
      flow_filter_(config_.kalman_q, config_.kalman_r) {}

std::optional<Uid> SafetyMonitor::personnel_at(Timestamp at) const {
  if (personnel_ && at - personnel_seen_at_ <= config_.personnel_context) return personnel_;
  return std::nullopt;
}

void SafetyMonitor::publish(SafetyEventKind kind, SafetyContext context, Timestamp at) {
  context.location = config_.location;
  codec::CloudRecord r = emit_safety_event(device_.id(), kind, context, at);
  r.seq = device_.take_seq();
  out_.record(std::move(r));
}

FlameObservation SafetyMonitor::on_flame_sample(const FlameSample& raw) {
  FlameObservation obs;
  FlameSample sample = raw;
  sample.ambient = ambient_filter_.update(raw.ambient);
  obs.filtered_ambient = sample.ambient;
  last_intensity_ = raw.intensity;

  if (previous_flame_) {
    const double threshold = flame_threshold(*previous_flame_, sample, config_.flame);
    obs.threshold = threshold;
    obs.detected = detect_flame(sample, threshold);
  }
  previous_flame_ = sample;

  if (obs.detected && !flame_active_) {
    obs.onset = true;
    SafetyContext ctx;
    ctx.intensity = raw.intensity;
    ctx.threshold = obs.threshold;
    ctx.uid = personnel_at(raw.at);
    publish(SafetyEventKind::kFlameDetected, ctx, raw.at);
    out_.alert(codec::Alert{config_.flame_alert_pattern, raw.at});
  }
  flame_active_ = obs.detected;
  return obs;
}

FlowObservation SafetyMonitor::on_flow_sample(double lpm, Timestamp at) {
  FlowObservation obs;
  obs.window_full = window_.full();
  obs.mean = window_.mean();
  obs.stddev = window_.stddev();
  obs.anomaly = flow_anomaly(window_, lpm);
  window_.push(lpm);
  obs.filtered = flow_filter_.update(lpm);
  last_filtered_flow_ = obs.filtered;

  if (obs.anomaly && !anomaly_active_) {
    obs.onset = true;
    SafetyContext ctx;
    ctx.flow_lpm = lpm;
    ctx.uid = personnel_at(at);
    publish(SafetyEventKind::kFlowAnomaly, ctx, at);
    out_.alert(codec::Alert{config_.flow_alert_pattern, at});
  }
  anomaly_active_ = obs.anomaly;
  return obs;
}

std::optional<Uid> SafetyMonitor::on_personnel_scan(std::string_view uid_raw, Timestamp at) {
  if (!Uid::is_well_formed(uid_raw)) return std::nullopt;
  Uid uid = Uid::parse(uid_raw);
  personnel_ = uid;
  personnel_seen_at_ = at;
  SafetyContext ctx;
  ctx.uid = uid;
  publish(SafetyEventKind::kPersonnelScan, ctx, at);
  return uid;
}

void SafetyMonitor::emit_status(Timestamp at) {
  SafetyContext ctx;
  if (flow_filter_.initialized()) ctx.flow_lpm = last_filtered_flow_;
  if (previous_flame_) ctx.intensity = last_intensity_;
  ctx.uid = personnel_at(at);
  publish(SafetyEventKind::kStatus, ctx, at);
}

}  // namespace edgegate::safety
