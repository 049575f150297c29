// Copyright 2026 The biompc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <deque>

#include "biompc/transport.hpp"

namespace biompc {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

void set_nonblocking(int fd) {
  int flags = fcntl(fd, F_GETFL, 0);
  if (flags < 0 || fcntl(fd, F_SETFL, flags | O_NONBLOCK) < 0) {
    throw_errno("fcntl");
  }
}

struct HostPort {
  std::string host;
  std::uint16_t port;
};

HostPort parse_addr(const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) {
    throw TransportError("address must be host:port, got '" + addr + "'");
  }
  HostPort hp;
  hp.host = addr.substr(0, colon);
  if (hp.host.empty()) {
    hp.host = "0.0.0.0";
  }
  unsigned long port = std::stoul(addr.substr(colon + 1));
  if (port > 65535) {
    throw TransportError("port out of range in '" + addr + "'");
  }
  hp.port = static_cast<std::uint16_t>(port);
  return hp;
}

sockaddr_in resolve(const HostPort& hp) {
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(hp.port);
  if (inet_pton(AF_INET, hp.host.c_str(), &sa.sin_addr) != 1) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (getaddrinfo(hp.host.c_str(), nullptr, &hints, &res) != 0 || !res) {
      throw TransportError("cannot resolve host '" + hp.host + "'");
    }
    sa.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
    freeaddrinfo(res);
  }
  return sa;
}

/// Framed endpoint over a nonblocking socket. send() keeps draining the
/// receive direction while the kernel buffer is full, so two peers flushing
/// large batches at each other simultaneously cannot deadlock.
class TcpEndpointImpl final : public Endpoint {
 public:
  explicit TcpEndpointImpl(int fd) : fd_(fd) {
    int one = 1;
    setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    set_nonblocking(fd_);
  }

  ~TcpEndpointImpl() override { close(); }

  void send(const Message& msg) override {
    if (fd_ < 0) {
      throw TransportError("endpoint closed");
    }
    std::vector<std::uint8_t> frame = encode_frame(msg);
    std::size_t sent = 0;
    while (sent < frame.size()) {
      pollfd pfd{fd_, POLLIN | POLLOUT, 0};
      if (poll(&pfd, 1, -1) < 0) {
        if (errno == EINTR) continue;
        throw_errno("poll");
      }
      if (pfd.revents & POLLIN) {
        pump_incoming();
      }
      if (pfd.revents & (POLLOUT | POLLERR | POLLHUP)) {
        ssize_t n = ::send(fd_, frame.data() + sent, frame.size() - sent,
                           MSG_NOSIGNAL);
        if (n < 0) {
          if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR) {
            continue;
          }
          throw_errno("send");
        }
        sent += static_cast<std::size_t>(n);
      }
    }
    account_send(stats_, msg);
  }

  Message recv() override {
    for (;;) {
      if (auto msg = decoder_.next()) {
        return *std::move(msg);
      }
      if (fd_ < 0 || eof_) {
        throw TransportError("connection closed by peer" +
                             std::string(decoder_.at_boundary()
                                             ? ""
                                             : " mid-frame (truncated)"));
      }
      pollfd pfd{fd_, POLLIN, 0};
      if (poll(&pfd, 1, -1) < 0) {
        if (errno == EINTR) continue;
        throw_errno("poll");
      }
      pump_incoming();
    }
  }

  void close() override {
    if (fd_ >= 0) {
      ::shutdown(fd_, SHUT_RDWR);
      ::close(fd_);
      fd_ = -1;
    }
  }

  const ChannelStats& stats() const override { return stats_; }

 private:
  void pump_incoming() {
    std::uint8_t chunk[65536];
    for (;;) {
      ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (n > 0) {
        decoder_.feed({chunk, static_cast<std::size_t>(n)});
        continue;
      }
      if (n == 0) {
        eof_ = true;
        return;
      }
      if (errno == EAGAIN || errno == EWOULDBLOCK) {
        return;
      }
      if (errno == EINTR) {
        continue;
      }
      throw_errno("recv");
    }
  }

  int fd_;
  bool eof_ = false;
  FrameDecoder decoder_;
  ChannelStats stats_;
};

}  // namespace

TcpListener::TcpListener(const std::string& addr) {
  HostPort hp = parse_addr(addr);
  sockaddr_in sa = resolve(hp);
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) {
    throw_errno("socket");
  }
  int one = 1;
  setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) < 0) {
    throw_errno("bind " + addr);
  }
  if (::listen(fd_, 1) < 0) {
    throw_errno("listen");
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  if (getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len) < 0) {
    throw_errno("getsockname");
  }
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) {
    ::close(fd_);
  }
}

std::unique_ptr<Endpoint> TcpListener::accept_one() {
  int conn = ::accept(fd_, nullptr, nullptr);
  if (conn < 0) {
    throw_errno("accept");
  }
  return std::make_unique<TcpEndpointImpl>(conn);
}

std::unique_ptr<Endpoint> listen_tcp(const std::string& addr,
                                     std::uint16_t* bound_port) {
  TcpListener listener(addr);
  if (bound_port != nullptr) {
    *bound_port = listener.port();
  }
  return listener.accept_one();
}

std::unique_ptr<Endpoint> connect_tcp(const std::string& addr) {
  HostPort hp = parse_addr(addr);
  sockaddr_in sa = resolve(hp);
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) {
    throw_errno("socket");
  }
  if (::connect(fd, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) < 0) {
    int err = errno;
    ::close(fd);
    errno = err;
    throw_errno("connect " + addr);
  }
  return std::make_unique<TcpEndpointImpl>(fd);
}

}  // namespace biompc
