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

#include "edgegate/auth/engine.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::auth {

std::string_view to_string(Decision d) {
  return d == Decision::kGranted ? "granted" : "denied";
}

std::string_view to_string(DecisionSource s) {
  switch (s) {
    case DecisionSource::kCache: return "cache";
    case DecisionSource::kCloud: return "cloud";
    case DecisionSource::kFallback: return "fallback";
  }
  return "unknown";
}

std::string_view to_string(FallbackMode m) {
  return m == FallbackMode::kDeny ? "deny" : "grant_if_previously_granted";
}

std::optional<DecisionSource> parse_decision_source(std::string_view text) {
  for (auto s : {DecisionSource::kCache, DecisionSource::kCloud, DecisionSource::kFallback}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<FallbackMode> parse_fallback_mode(std::string_view text) {
  for (auto m : {FallbackMode::kDeny, FallbackMode::kGrantIfPreviouslyGranted}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

void AuthConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kConfigError, what);
  };
  require(detection_window > Millis::zero(), "auth.detection_ms must be > 0");
  require(entry_hold > Millis::zero(), "auth.entry_s must be > 0");
  require(cloud_timeout > Millis::zero(), "auth.timeout_ms must be > 0");
  require(cache_ttl > Millis::zero(), "auth.cache_ttl_s must be > 0");
  require(cache_lookup >= Millis::zero(), "auth.cache_lookup_ms must be >= 0");
  require(cache_capacity > 0, "auth.cache_capacity must be > 0");
  require(open_angle_deg >= 0 && open_angle_deg <= 180, "auth.open_angle_deg out of range");
  require(closed_angle_deg >= 0 && closed_angle_deg <= 180,
          "auth.closed_angle_deg out of range");
  require(!location.empty(), "auth.location must be non-empty");
}

Decision check_temporal(const AccessPolicy& policy, Timestamp t) {
  const std::int64_t sod = seconds_of_day(t);
  const bool in_window = sod >= policy.window_start() && sod <= policy.window_end();
  return in_window && policy.allowed_days().contains(weekday_of(t)) ? Decision::kGranted
                                                                    : Decision::kDenied;
}

Uid validate_uid_format(std::string_view raw) { return Uid::parse(raw); }

Decision fallback_decision(const Uid& uid, Timestamp now, const PolicyCache& cache,
                           const AuthConfig& config) {
  if (config.fallback == FallbackMode::kDeny) return Decision::kDenied;
  const auto previous = cache.stale(uid);
  if (!previous) return Decision::kDenied;
  return check_temporal(previous->policy, now);
}

AuthEngine::AuthEngine(DeviceIdentity& device, AuthConfig config, PolicySource& cloud,
                       codec::EventOut& out)
    : device_(device),
      config_(std::move(config)),
      cloud_(cloud),
      out_(out),
      cache_((config_.validate(), config_.cache_capacity)),
      gate_(config_.closed_angle_deg, config_.open_angle_deg) {}

codec::CloudRecord AuthEngine::make_record(const Uid& uid, Timestamp t, Decision d) const {
  codec::CloudRecord r{device_.id(), t.whole_seconds(),
                       d == Decision::kGranted ? codec::EventType::kAccessGranted
                                               : codec::EventType::kAccessDenied,
                       {}, std::nullopt};
  r.data.add("uid", uid.value())
      .add("gate_status", d == Decision::kGranted ? "open" : "closed")
      .add("duration_ms", static_cast<std::int64_t>(
                              d == Decision::kGranted ? config_.entry_hold.count() : 0))
      .add("location", config_.location);
  return r;
}

AccessResponse AuthEngine::process_access_request(std::string_view uid_raw, Timestamp now) {
  AccessResponse response;
  response.decided_at = now;
  response.ready_at = ready_at_;

  if (busy_at(now)) {
    ++gate_busy_;
    response.status = RequestStatus::kGateBusy;
    return response;
  }
  if (!Uid::is_well_formed(uid_raw)) {
    ++rejected_inputs_;
    response.status = RequestStatus::kMalformedUid;
    response.ready_at = now;
    return response;
  }
  const Uid uid = validate_uid_format(uid_raw);

  Decision decision = Decision::kDenied;
  DecisionSource source = DecisionSource::kCache;
  Millis latency{0};

  if (const auto hit = cache_.lookup(uid, now)) {
    decision = check_temporal(hit->policy, now);
    latency = config_.cache_lookup;
    response.policy_used = hit->policy;
  } else {
    ++cloud_calls_;
    response.cloud_queried = true;
    const PolicyReply reply = cloud_.query(uid, now, config_.cloud_timeout);
    const bool answered = (reply.status == PolicyReply::Status::kFound ||
                           reply.status == PolicyReply::Status::kNotFound) &&
                          reply.elapsed <= config_.cloud_timeout;
    if (answered) {
      source = DecisionSource::kCloud;
      latency = reply.elapsed;
      if (reply.status == PolicyReply::Status::kFound && reply.policy) {
        decision = check_temporal(*reply.policy, now);
        response.policy_used = reply.policy;
        cache_.update(*reply.policy, now + latency, config_.cache_ttl);
      }
    } else {
      source = DecisionSource::kFallback;
      latency = reply.status == PolicyReply::Status::kUnavailable
                    ? std::min(reply.elapsed, config_.cloud_timeout)
                    : config_.cloud_timeout;
      decision = fallback_decision(uid, now, cache_, config_);
      if (const auto previous = cache_.stale(uid)) response.policy_used = previous->policy;
    }
  }

  const Timestamp decided_at = now + latency;
  codec::CloudRecord record = make_record(uid, now, decision);
  record.seq = device_.take_seq();

  if (decision == Decision::kGranted) {
    gate_.cycle(decided_at, config_.entry_hold);
    ready_at_ = decided_at + config_.entry_hold;
  } else {
    out_.alert(codec::Alert{config_.alert_pattern, decided_at});
    ready_at_ = decided_at;
  }
  out_.record(std::move(record));

  response.result = AuthResult{decision, source, latency, uid, now};
  response.decided_at = decided_at;
  response.ready_at = ready_at_;
  return response;
}

}  // namespace edgegate::auth
