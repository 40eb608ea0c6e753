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

#include "edgegate/sink/socket.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "edgegate/core/error.hpp"
#include "edgegate/sink/protocol.hpp"

namespace edgegate::sink {
namespace {

[[noreturn]] void io_error(const std::string& what) {
  throw Error(ErrorCode::kIoError, what + ": " + std::strerror(errno));
}

bool write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

bool read_exact(int fd, char* buf, std::size_t len) {
  while (len > 0) {
    const ssize_t n = ::recv(fd, buf, len, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    buf += n;
    len -= static_cast<std::size_t>(n);
  }
  return true;
}

std::optional<std::string> read_frame(int fd) {
  unsigned char header[4];
  if (!read_exact(fd, reinterpret_cast<char*>(header), sizeof(header))) return std::nullopt;
  std::string body(frame_length(header), '\0');
  if (!body.empty() && !read_exact(fd, body.data(), body.size())) return std::nullopt;
  return body;
}

}  // namespace

SinkServer::SinkServer(SheetSink& sink, Clock& clock, std::uint16_t port)
    : sink_(sink), clock_(clock), port_(port) {}

SinkServer::~SinkServer() { stop(); }

void SinkServer::start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) io_error("socket");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port_);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) io_error("bind");
  if (::listen(listen_fd_, 16) < 0) io_error("listen");
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void SinkServer::accept_loop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    std::lock_guard lock(conn_mu_);
    if (!running_) {
      ::close(fd);
      break;
    }
    conn_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { serve(fd); });
  }
}

void SinkServer::serve(int fd) {
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  while (running_) {
    std::optional<std::string> request;
    try {
      request = read_frame(fd);
    } catch (const Error&) {
      break;  // oversized frame; drop the connection
    }
    if (!request) break;
    const std::string response = handle_request(sink_, *request, clock_.now());
    ++served_;
    if (hook_) hook_();
    if (!write_all(fd, frame(response))) break;
  }
  std::lock_guard lock(conn_mu_);
  conn_fds_.erase(std::remove(conn_fds_.begin(), conn_fds_.end(), fd), conn_fds_.end());
  ::close(fd);
}

void SinkServer::stop() {
  if (!running_.exchange(false)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(conn_mu_);
    for (int fd : conn_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
}

void SinkServer::wait() {
  if (acceptor_.joinable()) acceptor_.join();
}

SinkConnection::SinkConnection(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &res) != 0 || res == nullptr) {
    throw Error(ErrorCode::kIoError, "cannot resolve " + host);
  }
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd_ < 0) {
    ::freeaddrinfo(res);
    io_error("socket");
  }
  const int rc = ::connect(fd_, res->ai_addr, res->ai_addrlen);
  ::freeaddrinfo(res);
  if (rc < 0) {
    ::close(fd_);
    fd_ = -1;
    io_error("connect " + host + ":" + service);
  }
  const int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

SinkConnection::~SinkConnection() {
  if (fd_ >= 0) ::close(fd_);
}

std::string SinkConnection::round_trip(std::string_view body) {
  if (!write_all(fd_, frame(body))) io_error("send");
  auto response = read_frame(fd_);
  if (!response) throw Error(ErrorCode::kIoError, "connection closed by sink");
  return *response;
}

SocketTransport::SocketTransport(std::string host, std::uint16_t port, std::string token)
    : host_(std::move(host)), port_(port), token_(std::move(token)) {}

std::optional<std::string> SocketTransport::exchange(const std::string& body) {
  try {
    if (!conn_) conn_.emplace(host_, port_);
    return conn_->round_trip(body);
  } catch (const Error&) {
    conn_.reset();
    return std::nullopt;
  }
}

sync::SendResult SocketTransport::send(std::string_view bytes, Timestamp /*now*/) {
  const Timestamp start = clock_.now();
  const auto body = exchange(make_append_request(token_, bytes));
  sync::SendResult result;
  result.elapsed = std::max(Millis::zero(), clock_.now() - start);
  if (!body) {
    result.status = sync::SendResult::Status::kTimeout;
    return result;
  }
  const Response r = parse_response(*body);
  if (r.status == "ok" && r.row_index) {
    result.status = sync::SendResult::Status::kAck;
    result.row_index = *r.row_index;
  } else {
    result.status = sync::SendResult::Status::kNack;
  }
  return result;
}

auth::PolicyReply SocketTransport::query(const Uid& uid, Timestamp /*now*/, Millis deadline) {
  const Timestamp start = clock_.now();
  const auto body = exchange(make_query_request(token_, uid));
  auth::PolicyReply reply;
  reply.elapsed = std::max(Millis::zero(), clock_.now() - start);
  if (!body || reply.elapsed > deadline) {
    reply.status = auth::PolicyReply::Status::kTimeout;
    reply.elapsed = deadline;
    return reply;
  }
  const Response r = parse_response(*body);
  if (r.status == "ok" && r.policy) {
    reply.status = auth::PolicyReply::Status::kFound;
    reply.policy = r.policy;
  } else if (r.status == "not_found") {
    reply.status = auth::PolicyReply::Status::kNotFound;
  } else {
    reply.status = auth::PolicyReply::Status::kUnavailable;
  }
  return reply;
}

}  // namespace edgegate::sink
