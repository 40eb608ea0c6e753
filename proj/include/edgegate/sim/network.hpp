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

#include <string>
#include <utility>
#include <vector>

#include "edgegate/auth/engine.hpp"
#include "edgegate/core/time.hpp"
#include "edgegate/sim/rng.hpp"
#include "edgegate/sink/sheet_sink.hpp"
#include "edgegate/sync/client.hpp"

namespace edgegate::sim {

struct Partition {
  Timestamp start;
  Timestamp end;  // exclusive
};

// Round-trip latency is normal(latency_mean, latency_stddev) clamped from
// below at latency_floor.
struct NetworkModel {
  Millis latency_mean{1200};
  Millis latency_stddev{300};
  Millis latency_floor{50};
  double drop_prob = 0.0;       // request lost; client times out
  double ack_loss_prob = 0.0;   // sink appends, response lost
  double duplicate_prob = 0.0;  // request delivered twice
  std::vector<Partition> partitions;  // sorted, disjoint

  bool partitioned_at(Timestamp t) const;
  void validate() const;  // throws kConfigError
};

Millis sample_latency(const NetworkModel& model, Rng& rng);

// Adds [start, end). Throws kInvalidArgument unless start < end and
// kOverlappingPartition if it intersects an existing partition.
void inject_partition(NetworkModel& model, Timestamp start, Timestamp end);

// One device's simulated link to the in-process sink. Every draw comes from
// the link's own generator.
class SimLink final : public sync::Transport, public auth::PolicySource {
 public:
  SimLink(const NetworkModel& model, sink::SheetSink& sink, std::string token, Rng rng,
          Millis send_timeout);

  sync::SendResult send(std::string_view bytes, Timestamp now) override;
  auth::PolicyReply query(const Uid& uid, Timestamp now, Millis deadline) override;

  std::uint64_t duplicate_deliveries() const { return duplicate_deliveries_; }

 private:
  bool chance(double p);

  const NetworkModel& model_;
  sink::SheetSink& sink_;
  std::string token_;
  Rng rng_;
  Millis send_timeout_;
  std::uint64_t duplicate_deliveries_ = 0;
};

}  // namespace edgegate::sim
