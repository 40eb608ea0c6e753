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
#include <optional>
#include <string>
#include <string_view>

#include "edgegate/core/time.hpp"
#include "edgegate/core/types.hpp"
#include "edgegate/sink/sheet_sink.hpp"

// Request/response messages shared by the in-process and socket bindings.
//
//   {"op":"APPEND","token":T,"record":"<record bytes>"}
//     -> {"status":"ok","row_index":N,"duplicate":B}
//   {"op":"QUERY","token":T,"uid":U}
//     -> {"status":"ok","policy":{...}} | {"status":"not_found"}
//   {"op":"EXPORT"}
//     -> {"status":"ok","csv":"..."}
//   any failure
//     -> {"status":"error","code":"Unauthorized","message":"..."}
//
// On a socket every body is framed by a 4-byte big-endian length prefix.
namespace edgegate::sink {

inline constexpr std::uint32_t kMaxFrameBytes = 16u << 20;

std::string frame(std::string_view body);
// Parses a 4-byte big-endian header. Throws kParseError above kMaxFrameBytes.
std::uint32_t frame_length(const unsigned char header[4]);

std::string make_append_request(std::string_view token, std::string_view record_bytes);
std::string make_query_request(std::string_view token, const Uid& uid);
std::string make_export_request();

// Executes one request against the sink; never throws for request-level
// failures, which are reported in the response body.
std::string handle_request(SheetSink& sink, std::string_view request, Timestamp now);

struct Response {
  std::string status;  // "ok" | "not_found" | "error"
  std::optional<std::string> error_code;
  std::string message;
  std::optional<std::uint64_t> row_index;
  bool duplicate = false;
  std::optional<AccessPolicy> policy;
  std::optional<std::string> csv;
};

Response parse_response(std::string_view body);  // throws kParseError

}  // namespace edgegate::sink
