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

// Acceptance checks. Prints one line per criterion and exits non-zero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "edgegate/auth/engine.hpp"
#include "edgegate/codec/cloud_record.hpp"
#include "edgegate/core/device.hpp"
#include "edgegate/core/error.hpp"
#include "edgegate/metrics/report.hpp"
#include "edgegate/safety/flame.hpp"
#include "edgegate/safety/kalman.hpp"
#include "edgegate/safety/rolling_window.hpp"
#include "edgegate/sim/network.hpp"
#include "edgegate/sim/scenario.hpp"
#include "edgegate/sim/simulator.hpp"
#include "edgegate/sync/backoff.hpp"
#include "labeled_trace.hpp"
#include "record_gen.hpp"

namespace {

using namespace edgegate;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

sim::Scenario scenario(const char* file) {
  return sim::load_scenario(std::string(EDGEGATE_SCENARIO_DIR) + "/" + file);
}

Verdict backoff_sequence() {
  const std::vector<std::int64_t> expected = {1, 2, 4, 8, 16, 32, 60, 60, 60, 60};
  const auto t0 = Clock::now();
  std::vector<std::int64_t> got;
  for (std::uint32_t n = 1; n <= 10; ++n) got.push_back(sync::backoff_delay(n, sync::RetryPolicy{}).count());
  const double elapsed = seconds_since(t0);
  bool match = true;
  std::string seq;
  for (std::size_t i = 0; i < got.size(); ++i) {
    match = match && got[i] == expected[i] * 1000;
    seq += (i ? "," : "") + std::to_string(got[i] / 1000);
  }
  return {match && elapsed < 1e-3, "[" + seq + "] s in " + fmt("%.1f us", elapsed * 1e6)};
}

Verdict flame_threshold_linearity() {
  const auto t0_wall = Clock::now();
  const safety::FlameParams p;
  const Timestamp t0 = Timestamp::from_civil(2024, 1, 15);
  const auto th = [&](double prev, double curr, double ambient, Millis dt) {
    return safety::flame_threshold({prev, 0.0, t0}, {curr, ambient, t0 + dt}, p);
  };
  const double flat = th(300.0, 300.0, 0.0, Millis(100));
  bool pass = flat == 560.0;

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> value(-1000.0, 1000.0);
  std::uniform_int_distribution<int> dt_ms(1, 10'000);
  double worst = 0.0;
  for (int i = 0; i < 10'000; ++i) {
    const double prev = value(rng), curr = value(rng), ambient = value(rng);
    const Millis dt(dt_ms(rng));
    const double slope = (curr - prev) / (static_cast<double>(dt.count()) / 1000.0);
    const double parts = p.alpha * p.t_base + p.beta * slope + p.gamma * ambient;
    const double combined = th(prev, curr, ambient, dt);
    // Superposition: base term plus slope-only plus ambient-only contributions.
    const double split = th(0, 0, 0, dt) + (th(prev, curr, 0, dt) - th(0, 0, 0, dt)) +
                         (th(0, 0, ambient, dt) - th(0, 0, 0, dt));
    const double scale = std::max({std::abs(parts), std::abs(p.beta * slope), 1.0});
    worst = std::max({worst, std::abs(combined - parts) / scale, std::abs(combined - split) / scale});
  }
  const double elapsed = seconds_since(t0_wall);
  pass = pass && worst <= 1e-9 && elapsed < 1.0;
  return {pass, fmt("flat threshold %.6f, worst relative deviation %.3g, %.3f s", flat, worst, elapsed)};
}

Verdict flow_anomaly_batch_agreement() {
  constexpr std::size_t kCap = safety::RollingWindow::kDefaultCapacity;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pushes(1, 2 * static_cast<int>(kCap));
  std::uniform_real_distribution<double> level(0.0, 50.0), spread(0.01, 5.0);
  std::uniform_real_distribution<double> kick(-6.0, 6.0);
  long disagreements = 0, anomalies = 0;
  for (int i = 0; i < 100'000; ++i) {
    const double mu = level(rng), sd = spread(rng);
    std::normal_distribution<double> noise(mu, sd);
    safety::RollingWindow w(kCap);
    std::vector<double> all;
    const int n = pushes(rng);
    for (int k = 0; k < n; ++k) {
      const double f = std::max(0.0, noise(rng));
      w.push(f);
      all.push_back(f);
    }
    const double f = std::max(0.0, mu + kick(rng) * sd);

    bool expected = false;
    if (all.size() >= kCap) {
      const std::vector<double> tail(all.end() - kCap, all.end());
      const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / kCap;
      double ss = 0.0;
      for (double x : tail) ss += (x - mean) * (x - mean);
      expected = std::abs(f - mean) > 3.0 * std::sqrt(ss / kCap);
    }
    anomalies += expected;
    disagreements += safety::flow_anomaly(w, f) != expected;
  }
  const double elapsed = seconds_since(t0);
  return {disagreements == 0 && elapsed < 10.0,
          fmt("%ld disagreements over 100000 windows (%ld anomalies) in %.2f s", disagreements, anomalies, elapsed)};
}

Verdict temporal_truth_table() {
  const auto t0 = Clock::now();
  const std::int64_t start = parse_time_of_day("09:00:00");
  const std::int64_t end = parse_time_of_day("17:00:00");
  const Uid uid = Uid::parse("A1B2C3D4");
  struct Probe {
    const char* name;
    int h, m, s;
    bool inside;
  };
  const Probe probes[] = {{"below", 8, 59, 59, false},
                          {"start", 9, 0, 0, true},
                          {"inside", 12, 30, 0, true},
                          {"end", 17, 0, 0, true},
                          {"above", 17, 0, 1, false}};
  int cases = 0, mismatches = 0;
  // 2024-01-15 is a Monday; consecutive days cover the week.
  for (int day = 0; day < 7; ++day) {
    for (const bool allowed : {true, false}) {
      WeekdaySet days;
      for (int other = 0; other < kWeekdayCount; ++other) {
        if (allowed || other != day) days.insert(static_cast<Weekday>(other));
      }
      const AccessPolicy policy(uid, start, end, days);
      for (const Probe& p : probes) {
        const Timestamp t = Timestamp::from_civil(2024, 1, 15 + day, p.h, p.m, p.s);
        const bool granted = auth::check_temporal(policy, t) == auth::Decision::kGranted;
        ++cases;
        mismatches += granted != (allowed && p.inside);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {cases == 70 && mismatches == 0 && elapsed < 1.0,
          fmt("%d cases, %d mismatches, %.1f us", cases, mismatches, elapsed * 1e6)};
}

Verdict codec_round_trip() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5);
  int failures = 0;
  for (int i = 0; i < 10'000; ++i) {
    const codec::CloudRecord r = edgegate::testing::random_record(rng);
    try {
      const std::string bytes = codec::encode(r);
      if (codec::decode(bytes) != r || codec::encode(codec::decode(bytes)) != bytes) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  const codec::CloudRecord sample = codec::decode(R"({
  "device_id": "AC_001",
  "timestamp": "2024-01-15T14:30:45Z",
  "event_type": "access_granted",
  "data": {
    "uid": "A1B2C3D4",
    "gate_status": "open",
    "duration_ms": 4800,
    "location": "Main_Entrance"
  }
})");
  const auto text = [&](const char* key) {
    const auto* v = sample.data.find(key);
    return v && std::holds_alternative<std::string>(*v) ? std::get<std::string>(*v) : std::string("?");
  };
  const auto* duration = sample.data.find("duration_ms");
  const bool sample_ok = sample.device_id.value() == "AC_001" &&
                          sample.timestamp == Timestamp::from_civil(2024, 1, 15, 14, 30, 45) &&
                          sample.event_type == codec::EventType::kAccessGranted && !sample.seq &&
                          sample.data.size() == 4 && text("uid") == "A1B2C3D4" && text("gate_status") == "open" &&
                          text("location") == "Main_Entrance" && duration &&
                          std::holds_alternative<std::int64_t>(*duration) && std::get<std::int64_t>(*duration) == 4800;
  const double elapsed = seconds_since(t0);
  return {failures == 0 && sample_ok && elapsed < 5.0,
          fmt("%d/10000 round-trip failures, example record %s, %.2f s", failures, sample_ok ? "exact" : "WRONG",
              elapsed)};
}

Verdict partition_delivery() {
  const auto t0 = Clock::now();
  const sim::Scenario s = scenario("outage_24h.yaml");
  Millis longest{0};
  for (const auto& p : s.network.partitions) longest = std::max(longest, p.end - p.start);
  const bool shape = s.duration == Millis(30LL * 3600 * 1000) && longest == Millis(24LL * 3600 * 1000);
  const sim::RunResult r = sim::run(s);

  std::map<std::string, std::vector<std::string>> enqueued, stored;
  for (const auto& e : r.trace.events()) {
    if (e.kind == sim::trace_kind::kEnqueue) enqueued[e.device].push_back(e.fields.at("key").get<std::string>());
  }
  std::set<std::string> keys;
  std::size_t duplicate_rows = 0;
  for (const auto& row : r.sink->rows()) {
    stored[row.record.device_id.value()].push_back(row.key);
    duplicate_rows += !keys.insert(row.key).second;
  }
  const auto& c = r.report.counts;
  const bool all = c.enqueued > 0 && c.delivered == c.enqueued && r.sink->row_count() == c.enqueued;
  const bool ordered = stored == enqueued;
  const double elapsed = seconds_since(t0);
  return {shape && all && ordered && duplicate_rows == 0 && elapsed < 60.0,
          fmt("%llu/%llu delivered, order %s, %zu duplicate rows (%llu duplicate appends absorbed), %.2f s",
              static_cast<unsigned long long>(c.delivered), static_cast<unsigned long long>(c.enqueued),
              ordered ? "kept" : "BROKEN", duplicate_rows,
              static_cast<unsigned long long>(c.sink_duplicate_appends), elapsed)};
}

Verdict lossy_success() {
  const auto t0 = Clock::now();
  const sim::Scenario s = scenario("lossy_uplink.yaml");
  const sim::RunResult r = sim::run(s);
  const double drop = s.network.drop_prob;
  const std::uint32_t attempts = *s.devices.at(0).retry.max_attempts;
  const double p = 1.0 - std::pow(drop, attempts);
  const double n = static_cast<double>(r.report.counts.enqueued);
  const double sigma = std::sqrt(p * (1.0 - p) / n);
  const double got = r.report.logging_success.value_or(0.0);
  const double elapsed = seconds_since(t0);
  return {drop == 0.1 && attempts == 4 && n == 10'000 && std::abs(got - p) <= 3.0 * sigma && elapsed < 60.0,
          fmt("success %.6f vs %.6f +- %.6f over %.0f records, %.2f s", got, p, 3.0 * sigma, n, elapsed)};
}

class Discard : public codec::EventOut {
 public:
  void record(codec::CloudRecord) override {}
  void alert(const codec::Alert&) override {}
};

Verdict decision_latency() {
  const auto t0 = Clock::now();
  sim::NetworkModel net;
  net.latency_mean = Millis(1200);
  net.latency_stddev = Millis(300);
  sink::SheetSink sink;
  const Uid cached = Uid::from_bits(0xC0FFEE00u);
  const AccessPolicy open_all(cached, parse_time_of_day("00:00:00"), parse_time_of_day("23:59:59"),
                              WeekdaySet::all());
  sink.provision(open_all);
  constexpr int kRequests = 10'000;
  for (int i = 0; i < kRequests; ++i) {
    sink.provision(AccessPolicy(Uid::from_bits(0x10000000u + i), open_all.window_start(), open_all.window_end(),
                                WeekdaySet::all()));
  }
  sim::SimLink link(net, sink, std::string(sink::kDefaultToken), sim::make_stream(8, "latency"), Millis(5000));
  DeviceIdentity device(DeviceId::parse("AC_001"));
  auth::AuthConfig cfg;
  cfg.cache_capacity = 2 * kRequests;
  cfg.cache_ttl = Millis(30LL * 86'400'000);
  Discard out;
  auth::AuthEngine engine(device, cfg, link, out);

  Timestamp now = Timestamp::from_civil(2024, 1, 15);
  now = engine.process_access_request(cached.value(), now).ready_at + Millis(1000);  // warm the cache
  double total_ms = 0.0;
  int cache_hits = 0;
  for (int i = 0; i < kRequests; ++i) {
    const Uid uid = i % 2 == 0 ? cached : Uid::from_bits(0x10000000u + i);
    const auto resp = engine.process_access_request(uid.value(), now);
    total_ms += static_cast<double>(resp.result->decision_latency.count());
    cache_hits += resp.result->source == auth::DecisionSource::kCache;
    now = resp.ready_at + Millis(1000);
  }
  const double h = 0.5;
  const double t_cache = static_cast<double>(cfg.cache_lookup.count());
  // Expected round trip of a normal draw clamped below at the floor.
  const double mu = static_cast<double>(net.latency_mean.count());
  const double sd = static_cast<double>(net.latency_stddev.count());
  const double floor = static_cast<double>(net.latency_floor.count());
  const double z = (floor - mu) / sd;
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  const double rtt = floor * cdf + mu * (1.0 - cdf) + sd * pdf;
  const double expected = h * t_cache + (1.0 - h) * rtt;
  const double mean = total_ms / kRequests;
  const double rel = std::abs(mean - expected) / expected;
  const double elapsed = seconds_since(t0);
  return {cache_hits == kRequests / 2 && rel <= 0.05 && elapsed < 120.0,
          fmt("mean %.2f ms vs %.2f ms (%.2f%% off), hit ratio %.3f, %.2f s", mean, expected, rel * 100.0,
              static_cast<double>(cache_hits) / kRequests, elapsed)};
}

Verdict determinism() {
  const auto t0 = Clock::now();
  int identical = 0;
  std::string names;
  for (const char* file : {"demo.yaml", "outage_24h.yaml", "misread.yaml"}) {
    const sim::Scenario s = scenario(file);
    const sim::RunResult a = sim::run(s);
    const sim::RunResult b = sim::run(s);
    bool same = a.trace.to_jsonl() == b.trace.to_jsonl() && a.sink->export_csv() == b.sink->export_csv() &&
                a.truth.to_json().dump() == b.truth.to_json().dump();
    for (auto f : {metrics::ReportFormat::kJson, metrics::ReportFormat::kCsv, metrics::ReportFormat::kText}) {
      same = same && metrics::render_report(a.report, f) == metrics::render_report(b.report, f);
    }
    identical += same;
    names += (names.empty() ? "" : ", ") + s.name + (same ? "" : " (DIFFERS)");
  }
  const double elapsed = seconds_since(t0);
  return {identical == 3 && elapsed < 60.0, fmt("%d/3 identical: %s, %.2f s", identical, names.c_str(), elapsed)};
}

Verdict labeled_trace_metrics() {
  const auto t0 = Clock::now();
  edgegate::testing::LabeledTrace lt;
  // 6 authorized: 5 granted, 1 denied. 4 unauthorized: 1 granted, 3 denied.
  const bool script[10][2] = {{true, true},  {true, true},   {false, false}, {true, true},  {false, true},
                              {true, false}, {false, false}, {true, true},   {false, false}, {true, true}};
  for (const auto& [authorized, granted] : script) lt.decide(authorized, granted);
  const metrics::MetricsReport r = lt.report();
  const bool pass = r.counts.valid_attempts == 10 && r.auth_accuracy == 1.0 - 2.0 / 10.0 && r.far == 1.0 / 4.0 &&
                    r.frr == 1.0 / 6.0 && seconds_since(t0) < 1.0;
  return {pass, fmt("accuracy %.17g, FAR %.17g, FRR %.17g (want 0.8, 0.25, 1/6)", r.auth_accuracy.value_or(-1),
                    r.far.value_or(-1), r.frr.value_or(-1))};
}

Verdict kalman_fixed_point() {
  const auto t0 = Clock::now();
  const double q = 0.01, r = 1.0;
  safety::KalmanState s;
  s.q = q;
  s.r = r;
  s.variance = 1.0;
  for (int i = 0; i < 1000; ++i) s = safety::kalman_update(s, 20.0).first;
  const double carried = s.variance + q;  // variance entering the next update
  // Positive root of v^2 = q(v + r).
  const double root = (q + std::sqrt(q * q + 4.0 * q * r)) / 2.0;
  // The stored estimate variance satisfies P = (P + q) r / (P + q + r).
  const double posterior = (-q + std::sqrt(q * q + 4.0 * q * r)) / 2.0;
  const double root_rel = std::abs(carried - root) / root;
  const double post_rel = std::abs(s.variance - posterior) / posterior;
  const double elapsed = seconds_since(t0);
  return {root_rel <= 0.01 && post_rel <= 0.01 && std::abs(s.estimate - 20.0) < 1e-9 && elapsed < 1.0,
          fmt("v_pred %.9f vs root of v^2=q(v+r) %.9f; stored variance %.9f vs %.9f; %.1f us", carried, root,
              s.variance, posterior, elapsed * 1e6)};
}

Verdict auth_scenarios() {
  const auto t0 = Clock::now();
  const sim::RunResult clean = sim::run(scenario("auth_10k.yaml"));
  std::size_t set_errors = 0;
  for (const auto& e : clean.trace.events()) {
    if (e.kind != sim::trace_kind::kAuthDecision || e.fields.at("status") != "decided") continue;
    const bool granted = e.fields.at("outcome") == "granted";
    set_errors += granted != clean.truth.requests.at(e.fields.at("req").get<std::uint64_t>());
  }
  const auto& cc = clean.report.counts;
  const bool clean_ok = cc.requests == 10'000 && cc.valid_attempts > 0 && cc.gate_busy == 0 && set_errors == 0 &&
                        clean.report.auth_accuracy == 1.0;

  const sim::Scenario ms = scenario("misread.yaml");
  const sim::RunResult noisy = sim::run(ms);
  const auto band = [](double p, std::uint64_t n) { return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); };
  const double far_p = ms.devices.at(0).access.false_accept_rate;
  const double frr_p = ms.devices.at(0).access.false_reject_rate;
  const auto& nc = noisy.report.counts;
  const double far = noisy.report.far.value_or(-1), frr = noisy.report.frr.value_or(-1);
  const double far_band = band(far_p, nc.unauthorized_attempts), frr_band = band(frr_p, nc.authorized_attempts);
  const bool noisy_ok = std::abs(far - far_p) <= far_band && std::abs(frr - frr_p) <= frr_band;
  const double elapsed = seconds_since(t0);
  return {clean_ok && noisy_ok && elapsed < 120.0,
          fmt("clean: %llu requests, accuracy %.6f, %zu set errors; misread: FAR %.5f (%.3f +- %.5f), "
              "FRR %.5f (%.3f +- %.5f); %.2f s",
              static_cast<unsigned long long>(cc.requests), clean.report.auth_accuracy.value_or(-1), set_errors, far,
              far_p, far_band, frr, frr_p, frr_band, elapsed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"backoff schedule", backoff_sequence},
      {"flame threshold", flame_threshold_linearity},
      {"flow anomaly vs batch", flow_anomaly_batch_agreement},
      {"temporal truth table", temporal_truth_table},
      {"codec round trip", codec_round_trip},
      {"24 h partition delivery", partition_delivery},
      {"lossy uplink success", lossy_success},
      {"decision latency", decision_latency},
      {"seeded determinism", determinism},
      {"labelled trace metrics", labeled_trace_metrics},
      {"kalman fixed point", kalman_fixed_point},
      {"auth accuracy and misreads", auth_scenarios},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
