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

#include "edgegate/sim/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "edgegate/core/error.hpp"

namespace edgegate::sim {
namespace {

using Diagnostics = std::vector<std::string>;

// Typed, path-aware view over one YAML mapping. Every key read is marked as
// consumed so that leftovers can be reported as unknown.
class Section {
 public:
  Section(YAML::Node node, std::string path, Diagnostics& diag)
      : node_(std::move(node)), path_(std::move(path)), diag_(&diag) {
    if (node_ && !node_.IsMap()) error("", "expected a mapping");
  }

  const std::string& path() const { return path_; }

  void error(const std::string& key, const std::string& what) const {
    const std::string where = key.empty() ? path_ : (path_.empty() ? key : path_ + "." + key);
    diag_->push_back((where.empty() ? std::string("<root>") : where) + ": " + what);
  }

  template <typename T>
  std::optional<T> get(const std::string& key) {
    const YAML::Node v = lookup(key);
    if (!v) return std::nullopt;
    try {
      return v.as<T>();
    } catch (const YAML::Exception&) {
      error(key, "has the wrong type");
      return std::nullopt;
    }
  }

  double number(const std::string& key, double fallback) {
    return get<double>(key).value_or(fallback);
  }
  std::string text(const std::string& key, std::string fallback) {
    return get<std::string>(key).value_or(std::move(fallback));
  }
  Millis seconds(const std::string& key, Millis fallback) {
    const auto s = get<double>(key);
    if (!s) return fallback;
    if (!std::isfinite(*s)) {
      error(key, "must be finite");
      return fallback;
    }
    return Millis(static_cast<std::int64_t>(std::llround(*s * 1000.0)));
  }
  Millis millis(const std::string& key, Millis fallback) {
    const auto ms = get<std::int64_t>(key);
    return ms ? Millis(*ms) : fallback;
  }

  std::optional<Section> child(const std::string& key) {
    const YAML::Node v = lookup(key);
    if (!v) return std::nullopt;
    return Section(v, join(key), *diag_);
  }

  std::vector<Section> list(const std::string& key) {
    std::vector<Section> out;
    const YAML::Node v = lookup(key);
    if (!v) return out;
    if (!v.IsSequence()) {
      error(key, "expected a list");
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.emplace_back(v[i], join(key) + "[" + std::to_string(i) + "]", *diag_);
    }
    return out;
  }

  YAML::Node raw(const std::string& key) { return lookup(key); }

  void reject_unknown_keys() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!consumed_.count(key)) error(key, "unknown key");
    }
  }

 private:
  YAML::Node lookup(const std::string& key) {
    consumed_.insert(key);
    if (!node_ || !node_.IsMap()) return YAML::Node();
    return node_[key];
  }
  std::string join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  YAML::Node node_;
  std::string path_;
  Diagnostics* diag_;
  std::set<std::string> consumed_;
};

Partition read_interval(Section& s, Timestamp origin) {
  Partition p{origin + s.seconds("start_s", Millis(0)), origin + s.seconds("end_s", Millis(0))};
  s.reject_unknown_keys();
  return p;
}

std::optional<AccessPolicy> read_policy(Section& s) {
  const auto uid = s.get<std::string>("uid");
  const std::string window = s.text("window", "00:00:00-23:59:59");
  const YAML::Node days_node = s.raw("days");
  s.reject_unknown_keys();
  if (!uid) {
    s.error("uid", "is required");
    return std::nullopt;
  }
  WeekdaySet days;
  if (!days_node) {
    days = WeekdaySet::all();
  } else if (!days_node.IsSequence()) {
    s.error("days", "expected a list of weekday names");
  } else {
    for (const auto& d : days_node) {
      const auto day = parse_weekday(d.as<std::string>());
      if (!day) {
        s.error("days", "unknown weekday '" + d.as<std::string>() + "'");
      } else {
        days.insert(*day);
      }
    }
  }
  const auto dash = window.find('-');
  if (dash == std::string::npos) {
    s.error("window", "expected HH:MM[:SS]-HH:MM[:SS]");
    return std::nullopt;
  }
  std::optional<Uid> parsed;
  try {
    parsed = Uid::parse(*uid);
  } catch (const Error& e) {
    s.error("uid", e.what());
    return std::nullopt;
  }
  try {
    return AccessPolicy(*parsed, parse_time_of_day(window.substr(0, dash)),
                        parse_time_of_day(window.substr(dash + 1)), days);
  } catch (const Error& e) {
    s.error("", e.what());
    return std::nullopt;
  }
}

void read_access(Section& d, DeviceConfig& dev) {
  if (auto a = d.child("auth")) {
    auto& c = dev.auth;
    c.detection_window = a->millis("detection_ms", c.detection_window);
    c.entry_hold = a->seconds("entry_s", c.entry_hold);
    c.cloud_timeout = a->millis("timeout_ms", c.cloud_timeout);
    c.cache_ttl = a->seconds("cache_ttl_s", c.cache_ttl);
    c.cache_lookup = a->millis("cache_lookup_ms", c.cache_lookup);
    c.cache_capacity = a->get<std::size_t>("cache_capacity").value_or(c.cache_capacity);
    c.open_angle_deg = a->get<int>("open_angle_deg").value_or(c.open_angle_deg);
    c.closed_angle_deg = a->get<int>("closed_angle_deg").value_or(c.closed_angle_deg);
    c.alert_pattern = a->text("alert_pattern", c.alert_pattern);
    const std::string fallback = a->text("fallback", std::string(auth::to_string(c.fallback)));
    if (const auto mode = auth::parse_fallback_mode(fallback)) {
      c.fallback = *mode;
    } else {
      a->error("fallback", "expected deny or grant_if_previously_granted");
    }
    a->reject_unknown_keys();
  }
  if (auto w = d.child("workload")) {
    auto& c = dev.access;
    c.arrivals_per_hour = w->number("arrivals_per_hour", c.arrivals_per_hour);
    c.min_interarrival = w->seconds("min_interarrival_s", c.min_interarrival);
    c.authorized_fraction = w->number("authorized_fraction", c.authorized_fraction);
    c.malformed_fraction = w->number("malformed_fraction", c.malformed_fraction);
    c.false_accept_rate = w->number("false_accept_rate", c.false_accept_rate);
    c.false_reject_rate = w->number("false_reject_rate", c.false_reject_rate);
    c.unknown_pool = w->get<std::size_t>("unknown_pool").value_or(c.unknown_pool);
    c.max_requests = w->get<std::uint64_t>("max_requests").value_or(c.max_requests);
    if (const YAML::Node rd = w->raw("read_delay_ms")) {
      if (!rd.IsSequence() || rd.size() != 2) {
        w->error("read_delay_ms", "expected [min, max]");
      } else {
        c.read_delay_min = Millis(rd[0].as<std::int64_t>());
        c.read_delay_max = Millis(rd[1].as<std::int64_t>());
      }
    }
    w->reject_unknown_keys();
  }
}

void read_safety(Section& d, DeviceConfig& dev, Diagnostics& diag) {
  (void)diag;
  auto& s = dev.safety;
  if (auto f = d.child("flame")) {
    dev.flame.enabled = f->get<bool>("enabled").value_or(true);
    s.flame.t_base = f->number("t_base", s.flame.t_base);
    s.flame.alpha = f->number("alpha", s.flame.alpha);
    s.flame.beta = f->number("beta", s.flame.beta);
    s.flame.gamma = f->number("gamma", s.flame.gamma);
    auto& t = dev.flame;
    t.sample_period = f->millis("sample_ms", t.sample_period);
    t.baseline = f->number("baseline", t.baseline);
    t.noise_stddev = f->number("noise", t.noise_stddev);
    t.ambient = f->number("ambient", t.ambient);
    t.ambient_noise = f->number("ambient_noise", t.ambient_noise);
    s.flame_alert_pattern = f->text("alert_pattern", s.flame_alert_pattern);
    for (auto& e : f->list("episodes")) {
      FlameEpisode ep;
      ep.start = e.seconds("start_s", ep.start);
      ep.duration = e.seconds("duration_s", ep.duration);
      ep.peak = e.number("peak", ep.peak);
      ep.ramp = e.seconds("ramp_s", ep.ramp);
      e.reject_unknown_keys();
      t.episodes.push_back(ep);
    }
    f->reject_unknown_keys();
  }
  if (auto f = d.child("flow")) {
    auto& t = dev.flow;
    t.enabled = f->get<bool>("enabled").value_or(true);
    t.sample_period = f->seconds("sample_s", t.sample_period);
    t.baseline = f->number("baseline", t.baseline);
    t.noise_stddev = f->number("noise", t.noise_stddev);
    s.window_capacity = f->get<std::size_t>("window").value_or(s.window_capacity);
    s.flow_alert_pattern = f->text("alert_pattern", s.flow_alert_pattern);
    for (auto& e : f->list("anomalies")) {
      FlowInjection inj;
      inj.start = e.seconds("start_s", inj.start);
      inj.duration = e.seconds("duration_s", inj.duration);
      inj.delta = e.number("delta", inj.delta);
      e.reject_unknown_keys();
      t.anomalies.push_back(inj);
    }
    f->reject_unknown_keys();
  }
  if (auto k = d.child("kalman")) {
    s.kalman_q = k->number("q", s.kalman_q);
    s.kalman_r = k->number("r", s.kalman_r);
    k->reject_unknown_keys();
  }
  if (auto p = d.child("personnel")) {
    dev.personnel_scans_per_hour = p->number("scans_per_hour", dev.personnel_scans_per_hour);
    s.personnel_context = p->seconds("context_s", s.personnel_context);
    p->reject_unknown_keys();
  }
}

DeviceConfig read_device(Section& d, Diagnostics& diag) {
  DeviceConfig dev;
  const auto id = d.get<std::string>("id");
  if (!id) {
    d.error("id", "is required");
  } else if (!DeviceId::is_well_formed(*id)) {
    d.error("id", "must look like <role>_<number>, got '" + *id + "'");
  } else {
    dev.id = DeviceId::parse(*id);
  }
  const std::string kind = d.text("kind", "access");
  if (kind == "access") {
    dev.kind = DeviceKind::kAccess;
  } else if (kind == "safety") {
    dev.kind = DeviceKind::kSafety;
  } else {
    d.error("kind", "expected access or safety");
  }
  dev.token = d.get<std::string>("token");
  const std::string location = d.text("location", dev.kind == DeviceKind::kAccess
                                                      ? dev.auth.location
                                                      : dev.safety.location);
  dev.auth.location = location;
  dev.safety.location = location;

  if (auto r = d.child("retry")) {
    dev.retry.base = r->seconds("base_s", dev.retry.base);
    dev.retry.max = r->seconds("max_s", dev.retry.max);
    const auto attempts = r->get<std::int64_t>("max_attempts");
    if (attempts && *attempts < 0) r->error("max_attempts", "must be >= 0 (0 = unbounded)");
    if (attempts && *attempts > 0) dev.retry.max_attempts = static_cast<std::uint32_t>(*attempts);
    r->reject_unknown_keys();
  }
  dev.send_timeout = d.millis("send_timeout_ms", dev.send_timeout);
  if (auto q = d.child("queue")) {
    dev.queue_capacity = q->get<std::size_t>("capacity").value_or(dev.queue_capacity);
    const std::string overflow = q->text("overflow", std::string(sync::to_string(dev.overflow)));
    if (const auto p = sync::parse_overflow_policy(overflow)) {
      dev.overflow = *p;
    } else {
      q->error("overflow", "expected reject_new or drop_oldest");
    }
    q->reject_unknown_keys();
  }
  dev.status_interval = d.seconds("status_interval_s", dev.status_interval);

  read_access(d, dev);
  read_safety(d, dev, diag);
  d.reject_unknown_keys();
  return dev;
}

[[noreturn]] void throw_diagnostics(const Diagnostics& diag) {
  std::ostringstream msg;
  msg << diag.size() << " problem(s) in scenario";
  for (const auto& d : diag) msg << "\n  " << d;
  throw Error(ErrorCode::kConfigError, msg.str());
}

void check_probability(Diagnostics& diag, const std::string& path, double p) {
  if (!(p >= 0.0 && p <= 1.0)) diag.push_back(path + ": must be within [0, 1]");
}

}  // namespace

void Scenario::validate() const {
  Diagnostics diag;
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok) diag.push_back(what);
  };
  check(duration >= Millis::zero(), "duration_s: must be >= 0");
  check(drain_grace >= Millis::zero(), "drain_grace_s: must be >= 0");
  check(queue_sample_period > Millis::zero(), "queue_sample_s: must be > 0");
  check(!sink_token.empty(), "sink.token: must be non-empty");
  check(network.latency_mean >= Millis::zero(), "network.latency_mean_s: must be >= 0");
  check(network.latency_stddev >= Millis::zero(), "network.latency_stddev_s: must be >= 0");
  check(network.latency_floor >= Millis::zero(), "network.latency_floor_s: must be >= 0");
  check_probability(diag, "network.drop_prob", network.drop_prob);
  check_probability(diag, "network.ack_loss_prob", network.ack_loss_prob);
  check_probability(diag, "network.duplicate_prob", network.duplicate_prob);
  for (std::size_t i = 0; i < network.partitions.size(); ++i) {
    const auto& p = network.partitions[i];
    check(p.start < p.end, "network.partitions[" + std::to_string(i) + "]: start must precede end");
    if (i > 0) {
      check(network.partitions[i - 1].end <= p.start,
            "network.partitions[" + std::to_string(i) + "]: overlaps the previous partition");
    }
  }
  for (std::size_t i = 0; i < sink_outages.size(); ++i) {
    check(sink_outages[i].start < sink_outages[i].end,
          "sink.outages[" + std::to_string(i) + "]: start must precede end");
  }

  std::set<Uid> seen_uids;
  for (const auto& p : authz) {
    check(seen_uids.insert(p.uid()).second, "authz: duplicate uid " + p.uid().value());
  }

  std::set<DeviceId> seen_ids;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const DeviceConfig& d = devices[i];
    const std::string at = "devices[" + std::to_string(i) + "]";
    check(seen_ids.insert(d.id).second, at + ".id: duplicate device id " + d.id.value());
    const auto nested = [&](auto&& fn) {
      try {
        fn();
      } catch (const Error& e) {
        diag.push_back(at + ": " + e.what());
      }
    };
    nested([&] { d.retry.validate(); });
    check(d.send_timeout > Millis::zero(), at + ".send_timeout_ms: must be > 0");
    check(d.queue_capacity > 0, at + ".queue.capacity: must be > 0");
    check(d.status_interval >= Millis::zero(), at + ".status_interval_s: must be >= 0");
    if (d.kind == DeviceKind::kAccess) {
      nested([&] { d.auth.validate(); });
      const auto& w = d.access;
      check(w.arrivals_per_hour >= 0.0, at + ".workload.arrivals_per_hour: must be >= 0");
      check(w.min_interarrival >= Millis::zero(), at + ".workload.min_interarrival_s: must be >= 0");
      check_probability(diag, at + ".workload.authorized_fraction", w.authorized_fraction);
      check_probability(diag, at + ".workload.malformed_fraction", w.malformed_fraction);
      check_probability(diag, at + ".workload.false_accept_rate", w.false_accept_rate);
      check_probability(diag, at + ".workload.false_reject_rate", w.false_reject_rate);
      check(w.read_delay_min >= Millis::zero() && w.read_delay_min <= w.read_delay_max,
            at + ".workload.read_delay_ms: need 0 <= min <= max");
      check(w.read_delay_max < d.auth.detection_window,
            at + ".workload.read_delay_ms: max must be below auth.detection_ms");
      check(w.unknown_pool > 0, at + ".workload.unknown_pool: must be > 0");
      check(w.arrivals_per_hour == 0.0 || w.authorized_fraction == 0.0 || !authz.empty(),
            at + ".workload.authorized_fraction: > 0 requires a non-empty authz list");
    } else {
      nested([&] { d.safety.validate(); });
      check(d.personnel_scans_per_hour >= 0.0, at + ".personnel.scans_per_hour: must be >= 0");
      check(d.personnel_scans_per_hour == 0.0 || !authz.empty(),
            at + ".personnel.scans_per_hour: > 0 requires a non-empty authz list");
      if (d.flame.enabled) {
        check(d.flame.sample_period > Millis::zero(), at + ".flame.sample_ms: must be > 0");
        check(d.flame.noise_stddev >= 0.0 && d.flame.ambient_noise >= 0.0,
              at + ".flame: noise levels must be >= 0");
        for (std::size_t k = 0; k < d.flame.episodes.size(); ++k) {
          const auto& e = d.flame.episodes[k];
          check(e.duration > Millis::zero() && e.start >= Millis::zero() && e.ramp >= Millis::zero(),
                at + ".flame.episodes[" + std::to_string(k) + "]: need start >= 0, duration > 0, ramp >= 0");
        }
      }
      if (d.flow.enabled) {
        check(d.flow.sample_period > Millis::zero(), at + ".flow.sample_s: must be > 0");
        check(d.flow.noise_stddev >= 0.0, at + ".flow.noise: must be >= 0");
        check(d.flow.baseline >= 0.0, at + ".flow.baseline: must be >= 0");
        for (std::size_t k = 0; k < d.flow.anomalies.size(); ++k) {
          const auto& e = d.flow.anomalies[k];
          check(e.duration > Millis::zero() && e.start >= Millis::zero(),
                at + ".flow.anomalies[" + std::to_string(k) + "]: need start >= 0, duration > 0");
        }
      }
    }
  }
  if (!diag.empty()) throw_diagnostics(diag);
}

Scenario parse_yaml(const std::string& yaml_text);

Scenario parse_scenario(const std::string& yaml_text) {
  try {
    return parse_yaml(yaml_text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("scenario: ") + e.what());
  }
}

Scenario parse_yaml(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("scenario is not valid YAML: ") + e.what());
  }
  Diagnostics diag;
  Scenario sc;
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  Section top(root, "", diag);

  sc.name = top.text("name", sc.name);
  sc.seed = top.get<std::uint64_t>("seed").value_or(sc.seed);
  if (const auto start = top.get<std::string>("start")) {
    try {
      sc.start = parse_iso8601(*start);
    } catch (const Error& e) {
      top.error("start", e.what());
    }
  }
  sc.duration = top.seconds("duration_s", sc.duration);
  sc.drain_grace = top.seconds("drain_grace_s", sc.drain_grace);
  sc.queue_sample_period = top.seconds("queue_sample_s", sc.queue_sample_period);

  if (auto s = top.child("sink")) {
    sc.sink_token = s->text("token", sc.sink_token);
    for (auto& o : s->list("outages")) sc.sink_outages.push_back(read_interval(o, sc.start));
    s->reject_unknown_keys();
  }
  if (auto n = top.child("network")) {
    auto& m = sc.network;
    m.latency_mean = n->seconds("latency_mean_s", m.latency_mean);
    m.latency_stddev = n->seconds("latency_stddev_s", m.latency_stddev);
    m.latency_floor = n->seconds("latency_floor_s", m.latency_floor);
    m.drop_prob = n->number("drop_prob", m.drop_prob);
    m.ack_loss_prob = n->number("ack_loss_prob", m.ack_loss_prob);
    m.duplicate_prob = n->number("duplicate_prob", m.duplicate_prob);
    for (auto& p : n->list("partitions")) {
      const Partition part = read_interval(p, sc.start);
      try {
        inject_partition(m, part.start, part.end);
      } catch (const Error& e) {
        p.error("", e.what());
      }
    }
    n->reject_unknown_keys();
  }
  for (auto& p : top.list("authz")) {
    if (auto policy = read_policy(p)) sc.authz.push_back(*policy);
  }
  for (auto& d : top.list("devices")) sc.devices.push_back(read_device(d, diag));
  top.reject_unknown_keys();

  if (!diag.empty()) throw_diagnostics(diag);
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace edgegate::sim
