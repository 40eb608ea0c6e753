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

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "edgegate/auth/engine.hpp"
#include "edgegate/core/clock.hpp"
#include "edgegate/sink/sheet_sink.hpp"
#include "edgegate/sync/client.hpp"

namespace edgegate::sink {

// Serves the sink protocol over TCP on 127.0.0.1, one thread per connection.
// The sink itself serializes requests, so concurrent clients observe a single
// total order of appends.
class SinkServer {
 public:
  // Called after every request that may have mutated the sink.
  using MutationHook = std::function<void()>;

  SinkServer(SheetSink& sink, Clock& clock, std::uint16_t port = 0);
  ~SinkServer();

  SinkServer(const SinkServer&) = delete;
  SinkServer& operator=(const SinkServer&) = delete;

  void set_mutation_hook(MutationHook hook) { hook_ = std::move(hook); }

  // Binds and starts accepting. Throws kIoError.
  void start();
  void stop();
  // Blocks until stop() is called from another thread.
  void wait();

  std::uint16_t port() const { return port_; }
  std::uint64_t requests_served() const { return served_.load(); }

 private:
  void accept_loop();
  void serve(int fd);

  SheetSink& sink_;
  Clock& clock_;
  std::uint16_t port_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::atomic<std::uint64_t> served_{0};
  std::thread acceptor_;
  std::mutex conn_mu_;
  std::vector<int> conn_fds_;
  std::vector<std::thread> workers_;
  MutationHook hook_;
};

// Blocking framed request/response connection.
class SinkConnection {
 public:
  SinkConnection(const std::string& host, std::uint16_t port);  // throws kIoError
  ~SinkConnection();

  SinkConnection(const SinkConnection&) = delete;
  SinkConnection& operator=(const SinkConnection&) = delete;

  std::string round_trip(std::string_view body);  // throws kIoError

 private:
  int fd_ = -1;
};

// Transport and policy source backed by a remote sink. Elapsed times are
// measured on the wall clock; a connection failure reports a timeout.
class SocketTransport final : public sync::Transport, public auth::PolicySource {
 public:
  SocketTransport(std::string host, std::uint16_t port, std::string token);

  sync::SendResult send(std::string_view bytes, Timestamp now) override;
  auth::PolicyReply query(const Uid& uid, Timestamp now, Millis deadline) override;

 private:
  std::optional<std::string> exchange(const std::string& body);

  std::string host_;
  std::uint16_t port_;
  std::string token_;
  std::optional<SinkConnection> conn_;
  WallClock clock_;
};

}  // namespace edgegate::sink
