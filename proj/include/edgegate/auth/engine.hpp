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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "edgegate/auth/gate.hpp"
#include "edgegate/auth/policy_cache.hpp"
#include "edgegate/codec/cloud_record.hpp"
#include "edgegate/codec/event_out.hpp"
#include "edgegate/core/device.hpp"
#include "edgegate/core/time.hpp"
#include "edgegate/core/types.hpp"

namespace edgegate::auth {

enum class Decision { kGranted, kDenied };
enum class DecisionSource { kCache, kCloud, kFallback };
enum class FallbackMode { kDeny, kGrantIfPreviouslyGranted };

std::string_view to_string(Decision d);
std::string_view to_string(DecisionSource s);
std::string_view to_string(FallbackMode m);
std::optional<DecisionSource> parse_decision_source(std::string_view text);
std::optional<FallbackMode> parse_fallback_mode(std::string_view text);

struct AuthConfig {
  // Reader hardware budget for presenting a card. The simulator draws read
  // delays below it; the engine never decides on it.
  Millis detection_window{100};
  Millis entry_hold{5000};
  Millis cloud_timeout{5000};
  Millis cache_ttl{86'400'000};
  // Decision latency charged for a cache-tier decision.
  Millis cache_lookup{5};
  std::size_t cache_capacity = 256;
  int open_angle_deg = 90;
  int closed_angle_deg = 0;
  FallbackMode fallback = FallbackMode::kDeny;
  std::string location = "Main_Entrance";
  std::string alert_pattern = "deny_triple_beep";

  void validate() const;  // throws kConfigError
};

// Eq-1 style temporal constraint: closed daily window AND weekday membership.
Decision check_temporal(const AccessPolicy& policy, Timestamp t);

// Throws kMalformedUid.
Uid validate_uid_format(std::string_view raw);

// Decision when the cloud is unreachable and the cache missed.
Decision fallback_decision(const Uid& uid, Timestamp now, const PolicyCache& cache,
                           const AuthConfig& config);

// Answer to "what policy does the cloud hold for uid".
struct PolicyReply {
  enum class Status { kFound, kNotFound, kUnavailable, kTimeout };

  Status status = Status::kTimeout;
  std::optional<AccessPolicy> policy;
  Millis elapsed{0};
};

class PolicySource {
 public:
  virtual ~PolicySource() = default;
  // Implementations report kTimeout with elapsed == deadline when no answer
  // arrives in time.
  virtual PolicyReply query(const Uid& uid, Timestamp now, Millis deadline) = 0;
};

struct AuthResult {
  Decision outcome;
  DecisionSource source;
  Millis decision_latency;
  Uid uid;
  Timestamp at;  // request time
};

enum class RequestStatus { kDecided, kMalformedUid, kGateBusy };

struct AccessResponse {
  RequestStatus status = RequestStatus::kDecided;
  std::optional<AuthResult> result;
  // Policy the decision was evaluated against, when one was available.
  std::optional<AccessPolicy> policy_used;
  // Whether a cloud query was issued for this request.
  bool cloud_queried = false;
  Timestamp decided_at;
  // Earliest instant the engine accepts the next request.
  Timestamp ready_at;
};

// Sequential access-control state machine for one reader + gate.
class AuthEngine {
 public:
  AuthEngine(DeviceIdentity& device, AuthConfig config, PolicySource& cloud, codec::EventOut& out);

  // Runs one request presented at `now`: validate -> cache -> cloud (bounded
  // by cloud_timeout) -> fallback, then actuates the gate or raises the
  // buzzer and emits exactly one record.
  AccessResponse process_access_request(std::string_view uid_raw, Timestamp now);

  bool busy_at(Timestamp t) const { return t < ready_at_; }

  PolicyCache& cache() { return cache_; }
  const PolicyCache& cache() const { return cache_; }
  const GateActuator& gate() const { return gate_; }
  const AuthConfig& config() const { return config_; }

  std::uint64_t rejected_inputs() const { return rejected_inputs_; }
  std::uint64_t gate_busy() const { return gate_busy_; }
  std::uint64_t cloud_calls() const { return cloud_calls_; }

 private:
  codec::CloudRecord make_record(const Uid& uid, Timestamp t, Decision d) const;

  DeviceIdentity& device_;
  AuthConfig config_;
  PolicySource& cloud_;
  codec::EventOut& out_;
  PolicyCache cache_;
  GateActuator gate_;
  Timestamp ready_at_;
  std::uint64_t rejected_inputs_ = 0;
  std::uint64_t gate_busy_ = 0;
  std::uint64_t cloud_calls_ = 0;
};

}  // namespace edgegate::auth
