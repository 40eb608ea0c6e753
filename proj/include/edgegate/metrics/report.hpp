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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edgegate/core/time.hpp"
#include "edgegate/sim/trace.hpp"

namespace edgegate::metrics {

inline constexpr std::string_view kReportSchema = "edgegate.report/1";

struct Episode {
  std::string device;
  Timestamp start;
  Timestamp end;

  friend bool operator==(const Episode&, const Episode&) = default;
};

// Labels produced by the workload generator, independent of any decision.
struct GroundTruth {
  // request id -> presented card was authorized at its read time
  std::map<std::uint64_t, bool> requests;
  std::vector<Episode> flame_episodes;
  std::vector<Episode> flow_episodes;
  // Onsets up to this long after an episode ends still count toward it.
  Millis detection_grace{30'000};

  nlohmann::ordered_json to_json() const;
  static GroundTruth from_json(const nlohmann::ordered_json& j);  // throws kParseError

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct Counts {
  std::uint64_t requests = 0;
  std::uint64_t valid_attempts = 0;
  std::uint64_t authorized_attempts = 0;
  std::uint64_t unauthorized_attempts = 0;
  std::uint64_t granted = 0;
  std::uint64_t denied = 0;
  std::uint64_t false_grants = 0;
  std::uint64_t false_denials = 0;
  std::uint64_t rejected_input = 0;
  std::uint64_t gate_busy = 0;
  std::uint64_t cache_decisions = 0;
  std::uint64_t cloud_decisions = 0;
  std::uint64_t fallback_decisions = 0;
  std::uint64_t enqueued = 0;
  std::uint64_t delivered = 0;
  std::uint64_t queued = 0;
  std::uint64_t dead_lettered = 0;
  std::uint64_t lost = 0;
  std::uint64_t sends = 0;
  std::uint64_t failed_sends = 0;
  std::uint64_t sink_rows = 0;
  std::uint64_t sink_duplicate_appends = 0;
  std::uint64_t flame_onsets = 0;
  std::uint64_t flame_onsets_in_episode = 0;
  std::uint64_t flame_episodes = 0;
  std::uint64_t flame_episodes_detected = 0;
  std::uint64_t flow_onsets = 0;
  std::uint64_t flow_onsets_in_episode = 0;
  std::uint64_t flow_episodes = 0;
  std::uint64_t flow_episodes_detected = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

// Fractions and timings are absent when their denominator is zero.
struct MetricsReport {
  std::string scenario;
  std::uint64_t seed = 0;

  std::optional<double> auth_accuracy;
  std::optional<double> far;
  std::optional<double> frr;
  std::optional<double> response_mean_ms;
  std::optional<double> response_p95_ms;

  std::optional<double> logging_success;
  std::optional<double> lost_fraction;
  std::optional<double> queued_fraction;
  std::optional<double> dead_letter_fraction;
  std::optional<double> latency_mean_s;
  std::optional<double> latency_p95_s;

  std::optional<double> flame_precision;
  std::optional<double> flame_recall;
  std::optional<double> flow_precision;
  std::optional<double> flow_recall;

  // (time, total outbox depth across devices)
  std::vector<std::pair<Timestamp, std::uint64_t>> queue_depth_series;
  std::uint64_t max_queue_depth = 0;

  Counts counts;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Pure aggregation of a trace against its labels. Throws kMismatchedTruth
// when the trace's requests and the labels do not correspond one-to-one.
MetricsReport compute_metrics(const sim::EventTrace& trace, const GroundTruth& truth);

// Nearest-rank percentile (q in (0, 1]); nullopt for an empty sample.
std::optional<double> percentile(std::vector<double> values, double q);

enum class ReportFormat { kJson, kCsv, kText };
std::optional<ReportFormat> parse_report_format(std::string_view text);

std::string render_report(const MetricsReport& r, ReportFormat format);
nlohmann::ordered_json report_to_json(const MetricsReport& r);
MetricsReport report_from_json(const nlohmann::ordered_json& j);  // throws kParseError

// Stable CSV column list.
const std::vector<std::string>& csv_columns();

}  // namespace edgegate::metrics
