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

#include "edgegate/sim/trace.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::sim {

using Json = nlohmann::ordered_json;

void EventTrace::add(Timestamp t, std::string_view kind, std::string device, Json fields) {
  if (!events_.empty() && t < events_.back().t) {
    throw Error(ErrorCode::kInvalidArgument, "trace time went backwards");
  }
  events_.push_back(TraceEvent{t, events_.size(), std::string(kind), std::move(device),
                               std::move(fields)});
}

std::string EventTrace::to_jsonl() const {
  std::string out;
  for (const TraceEvent& e : events_) {
    Json line;
    line["seq"] = e.seq;
    line["t_ms"] = e.t.epoch_millis();
    line["t"] = to_iso8601(e.t);
    line["kind"] = e.kind;
    line["device"] = e.device;
    for (const auto& [k, v] : e.fields.items()) line[k] = v;
    out += line.dump();
    out += '\n';
  }
  return out;
}

EventTrace EventTrace::from_jsonl(std::string_view text) {
  EventTrace trace;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParseError, "trace line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("t_ms") || !j.contains("kind") || !j.contains("seq")) {
      throw Error(ErrorCode::kParseError, "trace line " + std::to_string(line_no) + ": missing header keys");
    }
    TraceEvent e;
    e.t = Timestamp::from_epoch_millis(j["t_ms"].get<std::int64_t>());
    e.seq = j["seq"].get<std::uint64_t>();
    e.kind = j["kind"].get<std::string>();
    e.device = j.value("device", std::string());
    for (const auto& [k, v] : j.items()) {
      if (k != "seq" && k != "t_ms" && k != "t" && k != "kind" && k != "device") e.fields[k] = v;
    }
    if (e.seq != trace.events_.size()) {
      throw Error(ErrorCode::kParseError, "trace line " + std::to_string(line_no) + ": seq out of order");
    }
    trace.events_.push_back(std::move(e));
  }
  return trace;
}

}  // namespace edgegate::sim
