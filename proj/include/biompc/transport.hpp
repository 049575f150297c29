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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biompc/errors.hpp"
#include "biompc/rng.hpp"

namespace biompc {

enum class MessageTag : std::uint8_t {
  EpsilonBatch = 1,  // opened x - a shares (multiplications and squares)
  DeltaBatch = 2,    // opened y - b shares
  Open = 3,          // partial opening of a shared value
  InputDiff = 4,     // input-phase broadcast of value - mask
  SigmaCommit = 5,   // commitment to the MAC-check sigma share
  SigmaReveal = 6,   // sigma share plus commitment nonce
  Control = 7,       // abort signalling
};

bool is_valid_tag(std::uint8_t tag);

struct Message {
  MessageTag tag = MessageTag::Control;
  std::vector<std::uint64_t> payload;
};

/// Per-endpoint send-side counters. One send() is one flush is one round;
/// epsilon/delta payloads count as tuple-open elements, everything else as
/// auxiliary. transcript_hash fingerprints every framed byte sent, for
/// determinism checks.
struct ChannelStats {
  std::uint64_t rounds_sent = 0;
  std::uint64_t tuple_open_elements = 0;
  std::uint64_t aux_elements = 0;
  std::uint64_t bytes_on_wire = 0;
  std::uint64_t transcript_hash = kFnvOffset;
};

class Endpoint {
 public:
  virtual ~Endpoint() = default;

  virtual void send(const Message& msg) = 0;
  virtual Message recv() = 0;

  /// Signals end-of-stream to the peer and unblocks its pending recv.
  virtual void close() = 0;

  virtual const ChannelStats& stats() const = 0;
};

/// Wire format: [u32 LE payload byte length][u8 tag][payload words, 8-byte LE
/// each]. Field elements travel as full 8-byte words; bandwidth comparisons
/// against the ell-bit formulas use element counts, not raw frame bytes.
inline constexpr std::size_t kFrameHeaderBytes = 5;
inline constexpr std::size_t kMaxPayloadElements = std::size_t{1} << 24;

std::size_t framed_size(const Message& msg);
std::vector<std::uint8_t> encode_frame(const Message& msg);

/// Applies one sent message to the counters (shared by all endpoint kinds).
void account_send(ChannelStats& stats, const Message& msg);

/// Incremental frame parser; tolerates arbitrary byte fragmentation.
class FrameDecoder {
 public:
  /// Appends raw stream bytes.
  void feed(std::span<const std::uint8_t> data);

  /// Pops the next complete message, if any. Throws TransportError on a
  /// malformed frame, reporting the absolute stream offset.
  std::optional<Message> next();

  /// True when no partial frame is buffered (clean stream boundary).
  bool at_boundary() const { return buf_.empty(); }

  std::size_t stream_offset() const { return consumed_; }

 private:
  std::vector<std::uint8_t> buf_;
  std::size_t consumed_ = 0;
};

/// Two connected in-memory endpoints with independent stats. Sends are
/// buffered and never block, so two lock-step sessions on separate threads
/// cannot deadlock.
std::pair<std::unique_ptr<Endpoint>, std::unique_ptr<Endpoint>>
pair_in_memory();

/// TCP endpoints, framing-identical to the in-memory pair. listen_tcp blocks
/// for exactly one peer. Addresses are "host:port"; a port of 0 picks an
/// ephemeral port (see bound_port).
class TcpEndpoint;
std::unique_ptr<Endpoint> listen_tcp(const std::string& addr,
                                     std::uint16_t* bound_port = nullptr);
std::unique_ptr<Endpoint> connect_tcp(const std::string& addr);

/// Opens the listening socket without accepting yet; returns the bound port.
/// Used when the connecting side must learn an ephemeral port first.
class TcpListener {
 public:
  explicit TcpListener(const std::string& addr);
  ~TcpListener();
  std::uint16_t port() const { return port_; }
  std::unique_ptr<Endpoint> accept_one();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace biompc
