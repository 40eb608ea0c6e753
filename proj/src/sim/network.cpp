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

#include "edgegate/sim/network.hpp"

#include <algorithm>
#include <random>

#include "edgegate/core/error.hpp"

namespace edgegate::sim {
namespace {

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

bool NetworkModel::partitioned_at(Timestamp t) const {
  return std::any_of(partitions.begin(), partitions.end(),
                     [&](const Partition& p) { return t >= p.start && t < p.end; });
}

void NetworkModel::validate() const {
  if (latency_mean < Millis::zero() || latency_stddev < Millis::zero() ||
      latency_floor < Millis::zero()) {
    throw Error(ErrorCode::kConfigError, "network latencies must be >= 0");
  }
  if (!valid_probability(drop_prob) || !valid_probability(ack_loss_prob) ||
      !valid_probability(duplicate_prob)) {
    throw Error(ErrorCode::kConfigError, "network probabilities must be within [0, 1]");
  }
}

Millis sample_latency(const NetworkModel& model, Rng& rng) {
  if (model.latency_stddev == Millis::zero()) {
    return std::max(model.latency_mean, model.latency_floor);
  }
  std::normal_distribution<double> dist(static_cast<double>(model.latency_mean.count()),
                                        static_cast<double>(model.latency_stddev.count()));
  const double ms = dist(rng);
  return std::max(Millis(static_cast<std::int64_t>(std::llround(ms))), model.latency_floor);
}

void inject_partition(NetworkModel& model, Timestamp start, Timestamp end) {
  if (!(start < end)) throw Error(ErrorCode::kInvalidArgument, "partition start must precede end");
  for (const Partition& p : model.partitions) {
    if (start < p.end && p.start < end) {
      throw Error(ErrorCode::kOverlappingPartition,
                  "partition [" + to_iso8601(start) + ", " + to_iso8601(end) +
                      ") overlaps an existing partition");
    }
  }
  model.partitions.push_back({start, end});
  std::sort(model.partitions.begin(), model.partitions.end(),
            [](const Partition& a, const Partition& b) { return a.start < b.start; });
}

SimLink::SimLink(const NetworkModel& model, sink::SheetSink& sink, std::string token, Rng rng,
                 Millis send_timeout)
    : model_(model),
      sink_(sink),
      token_(std::move(token)),
      rng_(std::move(rng)),
      send_timeout_(send_timeout) {}

bool SimLink::chance(double p) {
  if (p <= 0.0) return false;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
}

sync::SendResult SimLink::send(std::string_view bytes, Timestamp now) {
  using Status = sync::SendResult::Status;
  sync::SendResult result;
  if (model_.partitioned_at(now) || chance(model_.drop_prob)) {
    result.status = Status::kTimeout;
    result.elapsed = send_timeout_;
    return result;
  }
  const Millis latency = sample_latency(model_, rng_);
  const Timestamp arrival = now + latency / 2;
  try {
    const sink::AppendAck ack = sink_.append(token_, bytes, arrival);
    if (chance(model_.duplicate_prob)) {
      sink_.append(token_, bytes, arrival);
      ++duplicate_deliveries_;
    }
    result.row_index = ack.row_index;
    result.status = Status::kAck;
    result.elapsed = latency;
  } catch (const Error&) {
    result.status = Status::kNack;
    result.elapsed = std::min(latency, send_timeout_);
    return result;
  }
  if (latency > send_timeout_ || chance(model_.ack_loss_prob)) {
    result.status = Status::kTimeout;
    result.elapsed = send_timeout_;
  }
  return result;
}

auth::PolicyReply SimLink::query(const Uid& uid, Timestamp now, Millis deadline) {
  using Status = auth::PolicyReply::Status;
  auth::PolicyReply reply;
  if (model_.partitioned_at(now) || chance(model_.drop_prob)) {
    reply.status = Status::kTimeout;
    reply.elapsed = deadline;
    return reply;
  }
  const Millis latency = sample_latency(model_, rng_);
  if (latency > deadline) {
    reply.status = Status::kTimeout;
    reply.elapsed = deadline;
    return reply;
  }
  reply.elapsed = latency;
  try {
    reply.policy = sink_.query_policy(token_, uid, now + latency / 2);
    reply.status = reply.policy ? Status::kFound : Status::kNotFound;
  } catch (const Error&) {
    reply.status = Status::kUnavailable;
  }
  return reply;
}

}  // namespace edgegate::sim
