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

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgegate/core/clock.hpp"
#include "edgegate/core/error.hpp"
#include "edgegate/metrics/replay.hpp"
#include "edgegate/metrics/report.hpp"
#include "edgegate/sim/scenario.hpp"
#include "edgegate/sim/simulator.hpp"
#include "edgegate/sink/sheet_sink.hpp"
#include "edgegate/sink/socket.hpp"

namespace fs = std::filesystem;
using edgegate::Error;
using edgegate::ErrorCode;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << contents)) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

std::string resolve_token(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("EDGEGATE_SINK_TOKEN"); env && *env) return env;
  return std::string(edgegate::sink::kDefaultToken);
}

edgegate::metrics::ReportFormat format_or_throw(const std::string& text) {
  const auto f = edgegate::metrics::parse_report_format(text);
  if (!f) throw Error(ErrorCode::kConfigError, "unknown report format '" + text + "'");
  return *f;
}

int cmd_validate(const std::string& path) {
  const auto scenario = edgegate::sim::load_scenario(path);
  scenario.validate();
  std::cout << "ok: " << scenario.name << " (" << scenario.devices.size() << " devices)\n";
  return kExitOk;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, std::optional<std::string> out_dir,
            const std::string& format) {
  auto scenario = edgegate::sim::load_scenario(path);
  if (seed) scenario.seed = *seed;
  const auto fmt = format_or_throw(format);
  scenario.validate();

  const fs::path dir = out_dir ? fs::path(*out_dir) : fs::path("out") / scenario.name;
  const auto result = edgegate::sim::run(scenario);
  fs::create_directories(dir);
  write_file(dir / "trace.jsonl", result.trace.to_jsonl());
  write_file(dir / "truth.json", result.truth.to_json().dump(2) + "\n");
  write_file(dir / "report.json", edgegate::metrics::render_report(result.report, edgegate::metrics::ReportFormat::kJson));
  write_file(dir / "report.csv", edgegate::metrics::render_report(result.report, edgegate::metrics::ReportFormat::kCsv));
  write_file(dir / "sink.json", result.sink->state_to_json().dump(2) + "\n");
  std::cout << edgegate::metrics::render_report(result.report, fmt);
  return kExitOk;
}

int cmd_replay(const std::string& trace_path, std::optional<std::string> truth_path, const std::string& format) {
  const auto fmt = format_or_throw(format);
  const fs::path truth_file =
      truth_path ? fs::path(*truth_path) : fs::path(trace_path).parent_path() / "truth.json";
  const auto trace = edgegate::sim::EventTrace::from_jsonl(read_file(trace_path));
  Json truth_json;
  try {
    truth_json = Json::parse(read_file(truth_file));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, truth_file.string() + ": " + e.what());
  }
  const auto truth = edgegate::metrics::GroundTruth::from_json(truth_json);
  const auto report = edgegate::metrics::compute_metrics(trace, truth);
  const auto check = edgegate::metrics::verify_trace(trace);
  std::cout << edgegate::metrics::render_report(report, fmt);
  std::cerr << "replayed " << check.decisions_checked << " decisions, " << check.flame_onsets_checked
            << " flame onsets, " << check.flow_anomalies_checked << " flow anomalies\n";
  for (const auto& m : check.mismatches) {
    std::cerr << "mismatch at trace seq " << m.trace_seq << " (" << m.kind << "): " << m.detail << "\n";
  }
  return check.ok() ? kExitOk : kExitRuntime;
}

int cmd_serve(std::uint16_t port, const std::optional<std::string>& token_flag,
              const std::optional<std::string>& scenario_path, const std::optional<std::string>& state_path) {
  const std::string token = resolve_token(token_flag);
  std::unique_ptr<edgegate::sink::SheetSink> sink;
  if (state_path && fs::exists(*state_path)) {
    sink = edgegate::sink::SheetSink::from_state_json(Json::parse(read_file(*state_path)), token);
  } else {
    sink = std::make_unique<edgegate::sink::SheetSink>(token);
  }
  if (scenario_path) {
    for (const auto& p : edgegate::sim::load_scenario(*scenario_path).authz) sink->provision(p);
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  edgegate::WallClock clock;
  edgegate::sink::SinkServer server(*sink, clock, port);
  if (state_path) {
    server.set_mutation_hook([&] { write_file(*state_path, sink->state_to_json().dump(2) + "\n"); });
  }
  server.start();
  std::cout << "listening on 127.0.0.1:" << server.port() << std::endl;

  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  std::cerr << "served " << server.requests_served() << " requests\n";
  return kExitOk;
}

int cmd_export(const std::string& state_path, std::optional<std::string> out) {
  Json state;
  try {
    state = Json::parse(read_file(state_path));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, state_path + ": " + e.what());
  }
  const auto sink = edgegate::sink::SheetSink::from_state_json(state, resolve_token(std::nullopt));
  const std::string csv = sink->export_csv();
  if (out) {
    write_file(*out, csv);
  } else {
    std::cout << csv;
  }
  return kExitOk;
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidPolicy:
    case ErrorCode::kMalformedUid:
    case ErrorCode::kOverlappingPartition:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EdgeGate access-control and safety-monitoring simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::string format = "text";
  auto* run = app.add_subcommand("run", "Simulate a scenario and write trace, truth, report and sink state");
  run->add_option("scenario", scenario_path, "Scenario file (YAML)")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_dir, "Output directory (default out/<scenario name>)");
  run->add_option("--format", format, "Report printed to stdout: text, json or csv");

  std::string trace_path;
  std::optional<std::string> truth_path;
  auto* replay = app.add_subcommand("replay", "Recompute metrics from a trace and re-check its decisions");
  replay->add_option("trace", trace_path, "trace.jsonl written by run")->required();
  replay->add_option("--truth", truth_path, "Ground-truth labels (default truth.json beside the trace)");
  replay->add_option("--format", format, "text, json or csv");

  auto* validate = app.add_subcommand("validate", "Check a scenario file without running it");
  validate->add_option("scenario", scenario_path, "Scenario file (YAML)")->required();

  std::uint16_t port = 7878;
  std::optional<std::string> token;
  std::optional<std::string> authz_scenario;
  std::optional<std::string> state_path;
  auto* serve = app.add_subcommand("serve-sink", "Run the mock sink as a standalone TCP server");
  serve->add_option("--port", port, "TCP port on 127.0.0.1 (0 picks a free one)");
  serve->add_option("--token", token, "Bearer token (default $EDGEGATE_SINK_TOKEN or the built-in one)");
  serve->add_option("--authz", authz_scenario, "Scenario whose authz list seeds the policy table");
  serve->add_option("--state", state_path, "Sink state file, loaded at start and rewritten after each change");

  std::string sink_state;
  bool csv = false;
  std::optional<std::string> export_out;
  auto* exp = app.add_subcommand("export", "Export a saved sink state");
  exp->add_option("sink-state", sink_state, "sink.json")->required();
  exp->add_flag("--csv", csv, "Write CSV (the only format)")->required();
  exp->add_option("--out", export_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(scenario_path, seed, out_dir, format);
    if (*replay) return cmd_replay(trace_path, truth_path, format);
    if (*validate) return cmd_validate(scenario_path);
    if (*serve) return cmd_serve(port, token, authz_scenario, state_path);
    if (*exp) return cmd_export(sink_state, export_out);
  } catch (const Error& e) {
    std::cerr << "edgegate: " << e.what() << "\n";
    return is_config_error(e.code()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "edgegate: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
