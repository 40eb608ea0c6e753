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

#include "edgegate/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <variant>

#include "edgegate/core/error.hpp"

namespace edgegate::metrics {
namespace {

using Json = nlohmann::ordered_json;
namespace tk = sim::trace_kind;

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct EpisodeScore {
  std::uint64_t onsets = 0;
  std::uint64_t in_episode = 0;
  std::uint64_t episodes = 0;
  std::uint64_t detected = 0;
};

EpisodeScore score_onsets(const std::vector<std::pair<std::string, Timestamp>>& onsets,
                          const std::vector<Episode>& episodes, Millis grace) {
  EpisodeScore s;
  s.onsets = onsets.size();
  s.episodes = episodes.size();
  std::vector<bool> hit(episodes.size(), false);
  for (const auto& [device, t] : onsets) {
    bool inside = false;
    for (std::size_t i = 0; i < episodes.size(); ++i) {
      const Episode& e = episodes[i];
      if (e.device == device && t >= e.start && t <= e.end + grace) {
        inside = true;
        hit[i] = true;
      }
    }
    if (inside) ++s.in_episode;
  }
  s.detected = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), true));
  return s;
}

// Scalar report fields in their stable serialization order.
using FieldValue = std::variant<std::optional<double>*, std::uint64_t*, std::string*>;
using ConstFieldValue =
    std::variant<const std::optional<double>*, const std::uint64_t*, const std::string*>;

template <typename Report, typename Fn>
void for_each_scalar(Report& r, Fn&& fn) {
  fn("scenario", &r.scenario);
  fn("seed", &r.seed);
  fn("auth_accuracy", &r.auth_accuracy);
  fn("far", &r.far);
  fn("frr", &r.frr);
  fn("response_mean_ms", &r.response_mean_ms);
  fn("response_p95_ms", &r.response_p95_ms);
  fn("logging_success", &r.logging_success);
  fn("lost_fraction", &r.lost_fraction);
  fn("queued_fraction", &r.queued_fraction);
  fn("dead_letter_fraction", &r.dead_letter_fraction);
  fn("latency_mean_s", &r.latency_mean_s);
  fn("latency_p95_s", &r.latency_p95_s);
  fn("flame_precision", &r.flame_precision);
  fn("flame_recall", &r.flame_recall);
  fn("flow_precision", &r.flow_precision);
  fn("flow_recall", &r.flow_recall);
  fn("max_queue_depth", &r.max_queue_depth);
}

template <typename C, typename Fn>
void for_each_count(C& c, Fn&& fn) {
  fn("requests", &c.requests);
  fn("valid_attempts", &c.valid_attempts);
  fn("authorized_attempts", &c.authorized_attempts);
  fn("unauthorized_attempts", &c.unauthorized_attempts);
  fn("granted", &c.granted);
  fn("denied", &c.denied);
  fn("false_grants", &c.false_grants);
  fn("false_denials", &c.false_denials);
  fn("rejected_input", &c.rejected_input);
  fn("gate_busy", &c.gate_busy);
  fn("cache_decisions", &c.cache_decisions);
  fn("cloud_decisions", &c.cloud_decisions);
  fn("fallback_decisions", &c.fallback_decisions);
  fn("enqueued", &c.enqueued);
  fn("delivered", &c.delivered);
  fn("queued", &c.queued);
  fn("dead_lettered", &c.dead_lettered);
  fn("lost", &c.lost);
  fn("sends", &c.sends);
  fn("failed_sends", &c.failed_sends);
  fn("sink_rows", &c.sink_rows);
  fn("sink_duplicate_appends", &c.sink_duplicate_appends);
  fn("flame_onsets", &c.flame_onsets);
  fn("flame_onsets_in_episode", &c.flame_onsets_in_episode);
  fn("flame_episodes", &c.flame_episodes);
  fn("flame_episodes_detected", &c.flame_episodes_detected);
  fn("flow_onsets", &c.flow_onsets);
  fn("flow_onsets_in_episode", &c.flow_onsets_in_episode);
  fn("flow_episodes", &c.flow_episodes);
  fn("flow_episodes_detected", &c.flow_episodes_detected);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string scalar_text(const std::optional<double>* v) {
  return *v ? format_number(**v) : "n/a";
}
std::string scalar_text(const std::uint64_t* v) { return std::to_string(*v); }
std::string scalar_text(const std::string* v) { return *v; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json episodes_to_json(const std::vector<Episode>& episodes) {
  Json arr = Json::array();
  for (const Episode& e : episodes) {
    arr.push_back({{"device", e.device},
                   {"start_ms", e.start.epoch_millis()},
                   {"end_ms", e.end.epoch_millis()}});
  }
  return arr;
}

std::vector<Episode> episodes_from_json(const Json& arr) {
  std::vector<Episode> out;
  for (const Json& e : arr) {
    out.push_back(Episode{e.at("device").get<std::string>(),
                          Timestamp::from_epoch_millis(e.at("start_ms").get<std::int64_t>()),
                          Timestamp::from_epoch_millis(e.at("end_ms").get<std::int64_t>())});
  }
  return out;
}

}  // namespace

Json GroundTruth::to_json() const {
  Json j;
  Json reqs = Json::array();
  for (const auto& [id, authorized] : requests) {
    reqs.push_back({{"req", id}, {"authorized", authorized}});
  }
  j["requests"] = std::move(reqs);
  j["flame_episodes"] = episodes_to_json(flame_episodes);
  j["flow_episodes"] = episodes_to_json(flow_episodes);
  j["detection_grace_ms"] = detection_grace.count();
  return j;
}

GroundTruth GroundTruth::from_json(const Json& j) {
  try {
    GroundTruth t;
    for (const Json& r : j.at("requests")) {
      t.requests.emplace(r.at("req").get<std::uint64_t>(), r.at("authorized").get<bool>());
    }
    t.flame_episodes = episodes_from_json(j.at("flame_episodes"));
    t.flow_episodes = episodes_from_json(j.at("flow_episodes"));
    t.detection_grace = Millis(j.value("detection_grace_ms", std::int64_t{30'000}));
    return t;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("ground truth: ") + e.what());
  }
}

std::optional<double> percentile(std::vector<double> values, double q) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

MetricsReport compute_metrics(const sim::EventTrace& trace, const GroundTruth& truth) {
  MetricsReport r;
  Counts& c = r.counts;

  std::map<std::uint64_t, Timestamp> read_at;
  std::vector<double> response_ms;
  std::vector<double> delivery_s;
  std::vector<std::pair<std::string, Timestamp>> flame_onsets;
  std::vector<std::pair<std::string, Timestamp>> flow_onsets;
  std::set<std::uint64_t> seen_requests;

  for (const sim::TraceEvent& e : trace.events()) {
    const Json& f = e.fields;
    if (e.kind == tk::kSimStart) {
      r.scenario = f.value("scenario", std::string());
      r.seed = f.value("seed", std::uint64_t{0});
    } else if (e.kind == tk::kSimEnd) {
      c.sink_rows = f.value("sink_rows", std::uint64_t{0});
      c.sink_duplicate_appends = f.value("sink_duplicate_appends", std::uint64_t{0});
    } else if (e.kind == tk::kCardRead) {
      const auto req = f.at("req").get<std::uint64_t>();
      if (!truth.requests.count(req)) {
        throw Error(ErrorCode::kMismatchedTruth, "request " + std::to_string(req) + " has no label");
      }
      seen_requests.insert(req);
      read_at[req] = e.t;
      ++c.requests;
    } else if (e.kind == tk::kAuthDecision) {
      const auto req = f.at("req").get<std::uint64_t>();
      const std::string status = f.at("status").get<std::string>();
      if (status == "malformed_uid") {
        ++c.rejected_input;
        continue;
      }
      if (status == "gate_busy") {
        ++c.gate_busy;
        continue;
      }
      const auto label = truth.requests.find(req);
      const auto read = read_at.find(req);
      if (label == truth.requests.end() || read == read_at.end()) {
        throw Error(ErrorCode::kMismatchedTruth,
                    "decision for unknown request " + std::to_string(req));
      }
      ++c.valid_attempts;
      const bool granted = f.at("outcome").get<std::string>() == "granted";
      const bool authorized = label->second;
      (authorized ? c.authorized_attempts : c.unauthorized_attempts)++;
      (granted ? c.granted : c.denied)++;
      if (granted && !authorized) ++c.false_grants;
      if (!granted && authorized) ++c.false_denials;
      const std::string source = f.at("source").get<std::string>();
      if (source == "cache") ++c.cache_decisions;
      if (source == "cloud") ++c.cloud_decisions;
      if (source == "fallback") ++c.fallback_decisions;
      response_ms.push_back(static_cast<double>((e.t - read->second).count()));
    } else if (e.kind == tk::kEnqueue) {
      ++c.enqueued;
    } else if (e.kind == tk::kQueueFull) {
      ++c.enqueued;
      ++c.lost;
    } else if (e.kind == tk::kDropped) {
      ++c.lost;
    } else if (e.kind == tk::kSend) {
      ++c.sends;
      if (f.at("result").get<std::string>() != "ack") ++c.failed_sends;
    } else if (e.kind == tk::kAck) {
      ++c.delivered;
      delivery_s.push_back(static_cast<double>(f.at("latency_ms").get<std::int64_t>()) / 1000.0);
    } else if (e.kind == tk::kDeadLetter) {
      ++c.dead_lettered;
    } else if (e.kind == tk::kFlameOnset) {
      flame_onsets.emplace_back(e.device, e.t);
    } else if (e.kind == tk::kFlowAnomaly) {
      flow_onsets.emplace_back(e.device, e.t);
    } else if (e.kind == tk::kQueueSample) {
      const auto depth = f.at("depth").get<std::uint64_t>();
      if (!r.queue_depth_series.empty() && r.queue_depth_series.back().first == e.t) {
        r.queue_depth_series.back().second += depth;
      } else {
        r.queue_depth_series.emplace_back(e.t, depth);
      }
    }
  }

  if (seen_requests.size() != truth.requests.size()) {
    throw Error(ErrorCode::kMismatchedTruth, "labels exist for requests absent from the trace");
  }

  const std::uint64_t settled = c.delivered + c.dead_lettered + c.lost;
  c.queued = c.enqueued >= settled ? c.enqueued - settled : 0;

  r.auth_accuracy = c.valid_attempts == 0
                        ? std::nullopt
                        : std::optional<double>(1.0 - static_cast<double>(c.false_grants + c.false_denials) /
                                                          static_cast<double>(c.valid_attempts));
  r.far = ratio(c.false_grants, c.unauthorized_attempts);
  r.frr = ratio(c.false_denials, c.authorized_attempts);
  r.response_mean_ms = mean_of(response_ms);
  r.response_p95_ms = percentile(response_ms, 0.95);

  r.logging_success = ratio(c.delivered, c.enqueued);
  r.lost_fraction = ratio(c.lost, c.enqueued);
  r.queued_fraction = ratio(c.queued, c.enqueued);
  r.dead_letter_fraction = ratio(c.dead_lettered, c.enqueued);
  r.latency_mean_s = mean_of(delivery_s);
  r.latency_p95_s = percentile(delivery_s, 0.95);

  const EpisodeScore flame = score_onsets(flame_onsets, truth.flame_episodes, truth.detection_grace);
  c.flame_onsets = flame.onsets;
  c.flame_onsets_in_episode = flame.in_episode;
  c.flame_episodes = flame.episodes;
  c.flame_episodes_detected = flame.detected;
  r.flame_precision = ratio(flame.in_episode, flame.onsets);
  r.flame_recall = ratio(flame.detected, flame.episodes);

  const EpisodeScore flow = score_onsets(flow_onsets, truth.flow_episodes, truth.detection_grace);
  c.flow_onsets = flow.onsets;
  c.flow_onsets_in_episode = flow.in_episode;
  c.flow_episodes = flow.episodes;
  c.flow_episodes_detected = flow.detected;
  r.flow_precision = ratio(flow.in_episode, flow.onsets);
  r.flow_recall = ratio(flow.detected, flow.episodes);

  for (const auto& [t, depth] : r.queue_depth_series) {
    r.max_queue_depth = std::max(r.max_queue_depth, depth);
  }
  return r;
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "text") return ReportFormat::kText;
  return std::nullopt;
}

Json report_to_json(const MetricsReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  for_each_scalar(r, [&](const char* name, auto* v) {
    using T = std::remove_cv_t<std::remove_pointer_t<decltype(v)>>;
    if constexpr (std::is_same_v<T, std::optional<double>>) {
      j[name] = *v ? Json(**v) : Json(nullptr);
    } else {
      j[name] = *v;
    }
  });
  Json counts = Json::object();
  for_each_count(r.counts, [&](const char* name, const std::uint64_t* v) { counts[name] = *v; });
  j["counts"] = std::move(counts);
  Json series = Json::array();
  for (const auto& [t, depth] : r.queue_depth_series) {
    series.push_back(Json::array({t.epoch_millis(), depth}));
  }
  j["queue_depth_series"] = std::move(series);
  return j;
}

MetricsReport report_from_json(const Json& j) {
  try {
    if (j.at("schema").get<std::string>() != kReportSchema) {
      throw Error(ErrorCode::kParseError, "unsupported report schema");
    }
    MetricsReport r;
    for_each_scalar(r, [&](const char* name, auto* v) {
      using T = std::remove_pointer_t<decltype(v)>;
      const Json& value = j.at(name);
      if constexpr (std::is_same_v<T, std::optional<double>>) {
        *v = value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
      } else {
        *v = value.get<T>();
      }
    });
    for_each_count(r.counts, [&](const char* name, std::uint64_t* v) {
      *v = j.at("counts").at(name).get<std::uint64_t>();
    });
    for (const Json& p : j.at("queue_depth_series")) {
      r.queue_depth_series.emplace_back(Timestamp::from_epoch_millis(p.at(0).get<std::int64_t>()),
                                        p.at(1).get<std::uint64_t>());
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("report: ") + e.what());
  }
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> out;
    MetricsReport probe;
    for_each_scalar(probe, [&](const char* name, auto*) { out.emplace_back(name); });
    for_each_count(probe.counts, [&](const char* name, auto*) { out.emplace_back(name); });
    return out;
  }();
  return columns;
}

std::string render_report(const MetricsReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return report_to_json(r).dump(2) + "\n";
    case ReportFormat::kCsv: {
      std::vector<std::string> values;
      for_each_scalar(r, [&](const char*, const auto* v) { values.push_back(csv_escape(scalar_text(v))); });
      for_each_count(r.counts, [&](const char*, const std::uint64_t* v) { values.push_back(std::to_string(*v)); });
      std::string out;
      const auto& cols = csv_columns();
      for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
      out += "\n";
      for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i];
      return out + "\n";
    }
    case ReportFormat::kText: {
      std::ostringstream out;
      const auto row = [&](const std::string& name, const std::string& value) {
        out << "  " << name << std::string(name.size() < 26 ? 26 - name.size() : 1, ' ') << value << "\n";
      };
      out << "scenario " << r.scenario << " (seed " << r.seed << ")\n";
      out << "access control\n";
      row("accuracy", scalar_text(&r.auth_accuracy));
      row("false acceptance rate", scalar_text(&r.far));
      row("false rejection rate", scalar_text(&r.frr));
      row("response mean (ms)", scalar_text(&r.response_mean_ms));
      row("response p95 (ms)", scalar_text(&r.response_p95_ms));
      out << "cloud logging\n";
      row("success", scalar_text(&r.logging_success));
      row("lost", scalar_text(&r.lost_fraction));
      row("still queued", scalar_text(&r.queued_fraction));
      row("dead-lettered", scalar_text(&r.dead_letter_fraction));
      row("latency mean (s)", scalar_text(&r.latency_mean_s));
      row("latency p95 (s)", scalar_text(&r.latency_p95_s));
      row("max queue depth", std::to_string(r.max_queue_depth));
      out << "safety\n";
      row("flame precision", scalar_text(&r.flame_precision));
      row("flame recall", scalar_text(&r.flame_recall));
      row("flow precision", scalar_text(&r.flow_precision));
      row("flow recall", scalar_text(&r.flow_recall));
      out << "counts\n";
      for_each_count(r.counts, [&](const char* name, const std::uint64_t* v) {
        row(name, std::to_string(*v));
      });
      return out.str();
    }
  }
  return {};
}

}  // namespace edgegate::metrics
