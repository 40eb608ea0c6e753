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

#include "edgegate/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "edgegate/auth/engine.hpp"
#include "edgegate/codec/policy_json.hpp"
#include "edgegate/core/error.hpp"
#include "edgegate/safety/monitor.hpp"
#include "edgegate/sim/event_loop.hpp"
#include "edgegate/sim/network.hpp"
#include "edgegate/sync/client.hpp"

namespace edgegate::sim {
namespace {

using Json = nlohmann::ordered_json;
namespace tk = trace_kind;

class Collector final : public codec::EventOut {
 public:
  void record(codec::CloudRecord r) override { records_.push_back(std::move(r)); }
  void alert(const codec::Alert& a) override { alerts_.push_back(a); }

  std::vector<codec::CloudRecord> take_records() { return std::exchange(records_, {}); }
  std::vector<codec::Alert> take_alerts() { return std::exchange(alerts_, {}); }

 private:
  std::vector<codec::CloudRecord> records_;
  std::vector<codec::Alert> alerts_;
};

struct Device {
  Device(const DeviceConfig& c, const Scenario& s, sink::SheetSink& sink)
      : config(c),
        name(c.id.value()),
        identity(c.id),
        link(s.network, sink, c.token.value_or(s.sink_token), make_stream(s.seed, "network/" + name),
             c.send_timeout),
        queue(c.queue_capacity, c.overflow),
        client(queue, link, c.retry),
        workload(make_stream(s.seed, "workload/" + name)),
        flame_rng(make_stream(s.seed, "flame/" + name)),
        flow_rng(make_stream(s.seed, "flow/" + name)),
        personnel_rng(make_stream(s.seed, "personnel/" + name)) {}

  const DeviceConfig& config;
  std::string name;
  DeviceIdentity identity;
  Collector out;
  SimLink link;
  sync::OutboxQueue queue;
  sync::SyncClient client;
  std::unique_ptr<auth::AuthEngine> engine;
  std::unique_ptr<safety::SafetyMonitor> monitor;
  bool flushing = false;
  Rng workload;
  Rng flame_rng;
  Rng flow_rng;
  Rng personnel_rng;
  std::vector<Uid> unknown_pool;
  std::optional<safety::FlameSample> previous_flame;
  std::uint64_t arrivals = 0;
};

bool chance(Rng& rng, double p) {
  if (p <= 0.0) return false;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

Millis exponential_gap(Rng& rng, double per_hour) {
  const double ms = std::exponential_distribution<double>(per_hour / 3'600'000.0)(rng);
  return Millis(std::max<std::int64_t>(1, std::llround(ms)));
}

// Ramps linearly up over `ramp`, holds, and ramps down over the last `ramp`.
double episode_level(Millis elapsed, Millis duration, Millis ramp) {
  if (elapsed < Millis::zero() || elapsed > duration) return 0.0;
  if (ramp <= Millis::zero()) return 1.0;
  const double up = static_cast<double>(elapsed.count()) / static_cast<double>(ramp.count());
  const double down =
      static_cast<double>((duration - elapsed).count()) / static_cast<double>(ramp.count());
  return std::clamp(std::min(up, down), 0.0, 1.0);
}

class Simulation {
 public:
  explicit Simulation(const Scenario& s)
      : s_(s),
        clock_(s.start),
        sink_(std::make_unique<sink::SheetSink>(s.sink_token)),
        workload_end_(s.start + s.duration),
        end_(s.start + s.duration + s.drain_grace) {
    for (const AccessPolicy& p : s.authz) sink_->provision(p);
    for (const Partition& o : s.sink_outages) sink_->add_outage(o.start, o.end);
    std::set<Uid> provisioned;
    for (const AccessPolicy& p : s.authz) provisioned.insert(p.uid());
    for (const DeviceConfig& c : s.devices) {
      auto d = std::make_unique<Device>(c, s, *sink_);
      if (c.kind == DeviceKind::kAccess) {
        d->engine = std::make_unique<auth::AuthEngine>(d->identity, c.auth, d->link, d->out);
        Rng pool_rng = make_stream(s.seed, "pool/" + d->name);
        std::set<Uid> seen;
        while (d->unknown_pool.size() < c.access.unknown_pool) {
          const Uid uid = Uid::from_bits(static_cast<std::uint32_t>(pool_rng()));
          if (!provisioned.count(uid) && seen.insert(uid).second) d->unknown_pool.push_back(uid);
        }
      } else {
        d->monitor = std::make_unique<safety::SafetyMonitor>(d->identity, c.safety, d->out);
      }
      devices_.push_back(std::move(d));
    }
  }

  RunResult run() {
    Json ids = Json::array();
    for (const auto& d : devices_) ids.push_back(d->name);
    log(tk::kSimStart, "",
        {{"scenario", s_.name},
         {"seed", s_.seed},
         {"start", to_iso8601(s_.start)},
         {"duration_ms", s_.duration.count()},
         {"drain_grace_ms", s_.drain_grace.count()},
         {"devices", ids}});

    schedule_windows(s_.network.partitions, "network");
    schedule_windows(s_.sink_outages, "sink");
    for (auto& d : devices_) start_device(*d);
    if (s_.queue_sample_period > Millis::zero() && !devices_.empty()) {
      clock_.schedule(s_.start, [this] { sample_queues(); });
    }

    clock_.run_until(end_);
    log(tk::kSimEnd, "",
        {{"sink_rows", sink_->row_count()}, {"sink_duplicate_appends", sink_->duplicate_appends()}});

    RunResult result;
    result.report = metrics::compute_metrics(trace_, truth_);
    result.trace = std::move(trace_);
    result.truth = std::move(truth_);
    result.sink = std::move(sink_);
    return result;
  }

 private:
  void log(std::string_view kind, const std::string& device, Json fields = Json::object()) {
    trace_.add(clock_.now(), kind, device, std::move(fields));
  }

  void schedule_windows(const std::vector<Partition>& windows, const char* target) {
    for (const Partition& p : windows) {
      if (p.start >= end_) continue;
      clock_.schedule(std::max(p.start, s_.start), [this, p, target] {
        log(tk::kPartitionStart, "", {{"target", target}, {"until", to_iso8601(p.end)}});
      });
      if (p.end <= end_) {
        clock_.schedule(p.end, [this, target] { log(tk::kPartitionEnd, "", {{"target", target}}); });
      }
    }
  }

  void start_device(Device& d) {
    const DeviceConfig& c = d.config;
    if (c.kind == DeviceKind::kAccess) {
      schedule_arrival(d, s_.start);
    } else {
      if (c.flame.enabled) {
        clock_.schedule(s_.start, [this, &d] { flame_sample(d); });
        for (const FlameEpisode& e : c.flame.episodes) {
          truth_.flame_episodes.push_back({d.name, s_.start + e.start, s_.start + e.start + e.duration});
        }
      }
      if (c.flow.enabled) {
        clock_.schedule(s_.start, [this, &d] { flow_sample(d); });
        for (const FlowInjection& a : c.flow.anomalies) {
          truth_.flow_episodes.push_back({d.name, s_.start + a.start, s_.start + a.start + a.duration});
        }
      }
      schedule_scan(d, s_.start);
    }
    if (c.status_interval > Millis::zero()) {
      clock_.schedule(s_.start + c.status_interval, [this, &d] { status(d); });
    }
  }

  // --- uplink ---

  void publish(Device& d) {
    for (const codec::Alert& a : d.out.take_alerts()) log(tk::kAlert, d.name, {{"pattern", a.pattern}});
    enqueue(d, d.out.take_records());
  }

  void enqueue(Device& d, std::vector<codec::CloudRecord> records) {
    for (codec::CloudRecord& r : records) {
      const std::string key = codec::idempotency_key(r);
      const std::string type(codec::to_string(r.event_type));
      try {
        const auto dropped = d.queue.enqueue(std::move(r), clock_.now());
        log(tk::kEnqueue, d.name, {{"key", key}, {"event_type", type}, {"depth", d.queue.depth()}});
        if (dropped) log(tk::kDropped, d.name, {{"key", dropped->key}});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kQueueFull) throw;
        log(tk::kQueueFull, d.name, {{"key", key}, {"event_type", type}});
      }
    }
    if (!d.flushing && !d.queue.empty()) {
      d.flushing = true;
      clock_.schedule(clock_.now(), [this, &d] { attempt(d); });
    }
  }

  void attempt(Device& d) {
    const auto in_flight = d.client.begin_send(clock_.now());
    if (!in_flight) {
      d.flushing = false;
      return;
    }
    clock_.schedule(in_flight->completes_at, [this, &d, f = *in_flight] { complete(d, f); });
  }

  void complete(Device& d, const sync::InFlight& f) {
    log(tk::kSend, d.name,
        {{"key", f.key},
         {"attempt", f.attempt},
         {"result", sync::to_string(f.result.status)},
         {"elapsed_ms", f.result.elapsed.count()}});
    const sync::StepOutcome step = d.client.finish(f);
    if (step.receipt && step.delivered) {
      log(tk::kAck, d.name,
          {{"key", step.receipt->key},
           {"row_index", step.receipt->row_index},
           {"attempts", step.delivered->attempts},
           {"latency_ms", (clock_.now() - step.delivered->enqueued_at).count()}});
    }
    if (step.dead_letter) {
      log(tk::kDeadLetter, d.name,
          {{"key", step.dead_letter->key}, {"attempts", step.dead_letter->attempts}});
    }
    if (step.next_attempt_at) {
      clock_.schedule(*step.next_attempt_at, [this, &d] { attempt(d); });
    } else {
      d.flushing = false;
    }
  }

  void sample_queues() {
    for (const auto& d : devices_) log(tk::kQueueSample, d->name, {{"depth", d->queue.depth()}});
    const Timestamp next = clock_.now() + s_.queue_sample_period;
    if (next <= end_) clock_.schedule(next, [this] { sample_queues(); });
  }

  void status(Device& d) {
    if (d.monitor) {
      d.monitor->emit_status(clock_.now());
    } else {
      safety::SafetyContext ctx;
      ctx.location = d.config.auth.location;
      codec::CloudRecord r =
          safety::emit_safety_event(d.identity.id(), safety::SafetyEventKind::kStatus, ctx, clock_.now());
      r.seq = d.identity.take_seq();
      d.out.record(std::move(r));
    }
    publish(d);
    const Timestamp next = clock_.now() + d.config.status_interval;
    if (next < workload_end_) clock_.schedule(next, [this, &d] { status(d); });
  }

  // --- access workload ---

  void schedule_arrival(Device& d, Timestamp from) {
    const AccessWorkload& w = d.config.access;
    if (w.arrivals_per_hour <= 0.0) return;
    if (w.max_requests > 0 && d.arrivals >= w.max_requests) return;
    const Timestamp at = from + std::max(exponential_gap(d.workload, w.arrivals_per_hour), w.min_interarrival);
    if (at >= workload_end_) return;
    ++d.arrivals;
    clock_.schedule(at, [this, &d] {
      const AccessWorkload& wl = d.config.access;
      const Millis delay(std::uniform_int_distribution<std::int64_t>(
          wl.read_delay_min.count(), wl.read_delay_max.count())(d.workload));
      clock_.schedule_after(delay, [this, &d, delay] { card_read(d, delay); });
      schedule_arrival(d, clock_.now());
    });
  }

  // Chooses the physical card, labels it, then applies reader misreads.
  std::pair<std::string, bool> present_card(Device& d, Timestamp now) {
    const AccessWorkload& w = d.config.access;
    if (chance(d.workload, w.malformed_fraction)) {
      return {pick(d.workload, d.unknown_pool).value().substr(0, 6), false};
    }
    std::string raw;
    bool authorized = false;
    if (chance(d.workload, w.authorized_fraction)) {
      const AccessPolicy& p = pick(d.workload, s_.authz);
      raw = p.uid().value();
      authorized = auth::check_temporal(p, now) == auth::Decision::kGranted;
    } else {
      raw = pick(d.workload, d.unknown_pool).value();
    }
    if (!authorized && chance(d.workload, w.false_accept_rate)) {
      std::vector<Uid> open;
      for (const AccessPolicy& p : s_.authz) {
        if (auth::check_temporal(p, now) == auth::Decision::kGranted) open.push_back(p.uid());
      }
      if (!open.empty()) raw = pick(d.workload, open).value();
    } else if (authorized && chance(d.workload, w.false_reject_rate)) {
      raw = pick(d.workload, d.unknown_pool).value();
    }
    return {raw, authorized};
  }

  void card_read(Device& d, Millis read_delay) {
    const Timestamp now = clock_.now();
    const std::uint64_t req = next_request_++;
    const auto [raw, authorized] = present_card(d, now);
    truth_.requests.emplace(req, authorized);
    log(tk::kCardRead, d.name, {{"req", req}, {"uid_raw", raw}, {"read_delay_ms", read_delay.count()}});

    const auth::AccessResponse response = d.engine->process_access_request(raw, now);
    if (response.status == auth::RequestStatus::kGateBusy) {
      log(tk::kAuthDecision, d.name, {{"req", req}, {"status", "gate_busy"}});
      return;
    }
    if (response.status == auth::RequestStatus::kMalformedUid) {
      log(tk::kAuthDecision, d.name, {{"req", req}, {"status", "malformed_uid"}});
      return;
    }

    const auth::AuthResult& result = *response.result;
    Json fields{{"req", req},
                {"status", "decided"},
                {"outcome", auth::to_string(result.outcome)},
                {"source", auth::to_string(result.source)},
                {"latency_ms", result.decision_latency.count()},
                {"uid", result.uid.value()},
                {"request_t_ms", now.epoch_millis()},
                {"cloud_queried", response.cloud_queried}};
    if (result.source == auth::DecisionSource::kFallback) {
      fields["fallback"] = auth::to_string(d.config.auth.fallback);
    }
    if (response.policy_used) fields["policy"] = codec::policy_to_json(*response.policy_used);

    const bool granted = result.outcome == auth::Decision::kGranted;
    clock_.schedule(response.decided_at, [this, &d, req, granted, fields = std::move(fields)] {
      log(tk::kAuthDecision, d.name, fields);
      if (granted) {
        log(tk::kGateOpen, d.name, {{"req", req}, {"angle_deg", d.config.auth.open_angle_deg}});
        clock_.schedule_after(d.config.auth.entry_hold, [this, &d, req] {
          log(tk::kGateClose, d.name, {{"req", req}, {"angle_deg", d.config.auth.closed_angle_deg}});
        });
      }
      publish(d);
    });
  }

  // --- safety workload ---

  void flame_sample(Device& d) {
    const FlameTrace& f = d.config.flame;
    const Timestamp now = clock_.now();
    double intensity = f.baseline + std::normal_distribution<double>(0.0, f.noise_stddev)(d.flame_rng);
    for (const FlameEpisode& e : f.episodes) {
      const double level = episode_level(now - (s_.start + e.start), e.duration, e.ramp);
      intensity += level * (e.peak - f.baseline);
    }
    const double ambient =
        f.ambient + std::normal_distribution<double>(0.0, f.ambient_noise)(d.flame_rng);
    const safety::FlameSample raw{std::max(0.0, intensity), std::max(0.0, ambient), now};

    const safety::FlameObservation obs = d.monitor->on_flame_sample(raw);
    if (obs.onset && d.previous_flame) {
      const safety::FlameParams& p = d.config.safety.flame;
      Json fields{{"intensity", raw.intensity},
                  {"ambient", obs.filtered_ambient},
                  {"threshold", *obs.threshold},
                  {"prev_intensity", d.previous_flame->intensity},
                  {"prev_t_ms", d.previous_flame->at.epoch_millis()},
                  {"params", {{"t_base", p.t_base}, {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}}}};
      if (const auto uid = d.monitor->personnel_at(now)) fields["uid"] = uid->value();
      log(tk::kFlameOnset, d.name, std::move(fields));
    }
    d.previous_flame = raw;
    publish(d);
    const Timestamp next = now + f.sample_period;
    if (next < workload_end_) clock_.schedule(next, [this, &d] { flame_sample(d); });
  }

  void flow_sample(Device& d) {
    const FlowTrace& f = d.config.flow;
    const Timestamp now = clock_.now();
    double flow = f.baseline + std::normal_distribution<double>(0.0, f.noise_stddev)(d.flow_rng);
    for (const FlowInjection& a : f.anomalies) {
      const Timestamp from = s_.start + a.start;
      if (now >= from && now <= from + a.duration) flow += a.delta;
    }
    flow = std::max(0.0, flow);

    const std::vector<double> before = d.monitor->window().samples();
    const safety::FlowObservation obs = d.monitor->on_flow_sample(flow, now);
    if (obs.onset) {
      Json fields{{"flow", flow}, {"mean", obs.mean}, {"stddev", obs.stddev}, {"window", before}};
      if (const auto uid = d.monitor->personnel_at(now)) fields["uid"] = uid->value();
      log(tk::kFlowAnomaly, d.name, std::move(fields));
    }
    publish(d);
    const Timestamp next = now + f.sample_period;
    if (next < workload_end_) clock_.schedule(next, [this, &d] { flow_sample(d); });
  }

  void schedule_scan(Device& d, Timestamp from) {
    if (d.config.personnel_scans_per_hour <= 0.0) return;
    const Timestamp at = from + exponential_gap(d.personnel_rng, d.config.personnel_scans_per_hour);
    if (at >= workload_end_) return;
    clock_.schedule(at, [this, &d] {
      const Uid uid = pick(d.personnel_rng, s_.authz).uid();
      d.monitor->on_personnel_scan(uid.value(), clock_.now());
      log(tk::kPersonnelScan, d.name, {{"uid", uid.value()}});
      publish(d);
      schedule_scan(d, clock_.now());
    });
  }

  const Scenario& s_;
  SimClock clock_;
  EventTrace trace_;
  metrics::GroundTruth truth_;
  std::unique_ptr<sink::SheetSink> sink_;
  std::vector<std::unique_ptr<Device>> devices_;
  Timestamp workload_end_;
  Timestamp end_;
  std::uint64_t next_request_ = 0;
};

}  // namespace

RunResult run(const Scenario& scenario) {
  scenario.validate();
  Simulation sim(scenario);
  return sim.run();
}

}  // namespace edgegate::sim
