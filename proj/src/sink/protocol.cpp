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

#include "edgegate/sink/protocol.hpp"

#include <json.hpp>

#include "edgegate/codec/policy_json.hpp"
#include "edgegate/core/error.hpp"

namespace edgegate::sink {
namespace {

using Json = nlohmann::ordered_json;

std::string error_response(std::string_view code, std::string_view message) {
  Json j;
  j["status"] = "error";
  j["code"] = code;
  j["message"] = message;
  return j.dump();
}

std::string string_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw Error(ErrorCode::kSchemaError, std::string("request field '") + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

}  // namespace

std::string frame(std::string_view body) {
  if (body.size() > kMaxFrameBytes) throw Error(ErrorCode::kInvalidArgument, "frame too large");
  const auto n = static_cast<std::uint32_t>(body.size());
  std::string out;
  out.reserve(4 + body.size());
  out.push_back(static_cast<char>((n >> 24) & 0xFF));
  out.push_back(static_cast<char>((n >> 16) & 0xFF));
  out.push_back(static_cast<char>((n >> 8) & 0xFF));
  out.push_back(static_cast<char>(n & 0xFF));
  out.append(body);
  return out;
}

std::uint32_t frame_length(const unsigned char header[4]) {
  const std::uint32_t n = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                          (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
  if (n > kMaxFrameBytes) throw Error(ErrorCode::kParseError, "frame length exceeds limit");
  return n;
}

std::string make_append_request(std::string_view token, std::string_view record_bytes) {
  Json j;
  j["op"] = "APPEND";
  j["token"] = token;
  j["record"] = record_bytes;
  return j.dump();
}

std::string make_query_request(std::string_view token, const Uid& uid) {
  Json j;
  j["op"] = "QUERY";
  j["token"] = token;
  j["uid"] = uid.value();
  return j.dump();
}

std::string make_export_request() { return R"({"op":"EXPORT"})"; }

std::string handle_request(SheetSink& sink, std::string_view request, Timestamp now) {
  try {
    Json req;
    try {
      req = Json::parse(request);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParseError, e.what());
    }
    if (!req.is_object()) throw Error(ErrorCode::kSchemaError, "request must be an object");
    const std::string op = string_field(req, "op");

    Json resp;
    if (op == "APPEND") {
      const AppendAck ack =
          sink.append(string_field(req, "token"), string_field(req, "record"), now);
      resp["status"] = "ok";
      resp["row_index"] = ack.row_index;
      resp["duplicate"] = ack.duplicate;
    } else if (op == "QUERY") {
      const Uid uid = Uid::parse(string_field(req, "uid"));
      const auto policy = sink.query_policy(string_field(req, "token"), uid, now);
      if (policy) {
        resp["status"] = "ok";
        resp["policy"] = codec::policy_to_json(*policy);
      } else {
        resp["status"] = "not_found";
      }
    } else if (op == "EXPORT") {
      resp["status"] = "ok";
      resp["csv"] = sink.export_csv();
    } else {
      throw Error(ErrorCode::kSchemaError, "unknown op '" + op + "'");
    }
    return resp.dump();
  } catch (const Error& e) {
    return error_response(to_string(e.code()), e.what());
  }
}

Response parse_response(std::string_view body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!j.is_object() || !j.contains("status") || !j["status"].is_string()) {
    throw Error(ErrorCode::kParseError, "response lacks status");
  }
  Response r;
  r.status = j["status"].get<std::string>();
  if (j.contains("code")) r.error_code = j["code"].get<std::string>();
  if (j.contains("message")) r.message = j["message"].get<std::string>();
  if (j.contains("row_index")) r.row_index = j["row_index"].get<std::uint64_t>();
  if (j.contains("duplicate")) r.duplicate = j["duplicate"].get<bool>();
  if (j.contains("policy")) r.policy = codec::policy_from_json(j["policy"]);
  if (j.contains("csv")) r.csv = j["csv"].get<std::string>();
  return r;
}

}  // namespace edgegate::sink
