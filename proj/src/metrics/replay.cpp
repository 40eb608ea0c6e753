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

#include "edgegate/metrics/replay.hpp"

#include <cmath>
#include <numeric>

#include "edgegate/auth/engine.hpp"
#include "edgegate/codec/policy_json.hpp"
#include "edgegate/core/error.hpp"
#include "edgegate/safety/flame.hpp"

namespace edgegate::metrics {
namespace {

using Json = nlohmann::ordered_json;
namespace tk = sim::trace_kind;

std::string expected_outcome(const Json& f) {
  const std::string source = f.at("source").get<std::string>();
  const Timestamp at = Timestamp::from_epoch_millis(f.at("request_t_ms").get<std::int64_t>());
  if (source == "fallback" && f.value("fallback", std::string("deny")) == "deny") return "denied";
  if (!f.contains("policy")) return "denied";
  const AccessPolicy policy = codec::policy_from_json(f.at("policy"));
  return std::string(auth::to_string(auth::check_temporal(policy, at)));
}

bool close_enough(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

ReplayCheck verify_trace(const sim::EventTrace& trace) {
  ReplayCheck check;
  for (const sim::TraceEvent& e : trace.events()) {
    const Json& f = e.fields;
    const auto fail = [&](std::string detail) {
      check.mismatches.push_back({e.seq, e.kind, std::move(detail)});
    };
    try {
      if (e.kind == tk::kAuthDecision) {
        if (f.at("status").get<std::string>() != "decided") continue;
        ++check.decisions_checked;
        const std::string expected = expected_outcome(f);
        const std::string logged = f.at("outcome").get<std::string>();
        if (expected != logged) fail("outcome " + logged + ", replay gives " + expected);
      } else if (e.kind == tk::kFlameOnset) {
        ++check.flame_onsets_checked;
        const Json& p = f.at("params");
        const safety::FlameParams params{p.at("t_base").get<double>(), p.at("alpha").get<double>(),
                                         p.at("beta").get<double>(), p.at("gamma").get<double>()};
        const safety::FlameSample prev{
            f.at("prev_intensity").get<double>(), 0.0,
            Timestamp::from_epoch_millis(f.at("prev_t_ms").get<std::int64_t>())};
        const safety::FlameSample curr{f.at("intensity").get<double>(), f.at("ambient").get<double>(), e.t};
        const double threshold = safety::flame_threshold(prev, curr, params);
        if (!close_enough(threshold, f.at("threshold").get<double>())) fail("threshold differs");
        if (!safety::detect_flame(curr, threshold)) fail("intensity below replayed threshold");
      } else if (e.kind == tk::kFlowAnomaly) {
        ++check.flow_anomalies_checked;
        const auto window = f.at("window").get<std::vector<double>>();
        if (window.empty()) {
          fail("empty window");
          continue;
        }
        const double n = static_cast<double>(window.size());
        const double mean = std::accumulate(window.begin(), window.end(), 0.0) / n;
        double ss = 0.0;
        for (double x : window) ss += (x - mean) * (x - mean);
        const double sigma = std::sqrt(ss / n);
        if (!close_enough(mean, f.at("mean").get<double>()) ||
            !close_enough(sigma, f.at("stddev").get<double>())) {
          fail("window statistics differ");
        }
        if (!(std::abs(f.at("flow").get<double>() - mean) > 3.0 * sigma)) {
          fail("flow within three standard deviations on replay");
        }
      }
    } catch (const Json::exception& ex) {
      fail(std::string("malformed event: ") + ex.what());
    } catch (const Error& ex) {
      fail(ex.what());
    }
  }
  return check;
}

}  // namespace edgegate::metrics
