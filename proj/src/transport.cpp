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

#include "biompc/transport.hpp"

#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

namespace biompc {

bool is_valid_tag(std::uint8_t tag) {
  return tag >= static_cast<std::uint8_t>(MessageTag::EpsilonBatch) &&
         tag <= static_cast<std::uint8_t>(MessageTag::Control);
}

std::size_t framed_size(const Message& msg) {
  return kFrameHeaderBytes + 8 * msg.payload.size();
}

void account_send(ChannelStats& stats, const Message& msg) {
  stats.rounds_sent += 1;
  if (msg.tag == MessageTag::EpsilonBatch || msg.tag == MessageTag::DeltaBatch) {
    stats.tuple_open_elements += msg.payload.size();
  } else {
    stats.aux_elements += msg.payload.size();
  }
  stats.bytes_on_wire += framed_size(msg);

  std::uint8_t header[kFrameHeaderBytes];
  const std::uint32_t len = static_cast<std::uint32_t>(8 * msg.payload.size());
  std::memcpy(header, &len, 4);
  header[4] = static_cast<std::uint8_t>(msg.tag);
  stats.transcript_hash = fnv1a64(stats.transcript_hash, header);
  for (std::uint64_t w : msg.payload) {
    stats.transcript_hash = fnv1a64_u64(stats.transcript_hash, w);
  }
}

std::vector<std::uint8_t> encode_frame(const Message& msg) {
  if (msg.payload.size() > kMaxPayloadElements) {
    throw TransportError("payload exceeds the 2^24 element limit");
  }
  std::vector<std::uint8_t> out(framed_size(msg));
  const std::uint32_t len = static_cast<std::uint32_t>(8 * msg.payload.size());
  std::memcpy(out.data(), &len, 4);
  out[4] = static_cast<std::uint8_t>(msg.tag);
  for (std::size_t i = 0; i < msg.payload.size(); ++i) {
    const std::uint64_t w = msg.payload[i];
    for (int b = 0; b < 8; ++b) {
      out[kFrameHeaderBytes + 8 * i + b] =
          static_cast<std::uint8_t>(w >> (8 * b));
    }
  }
  return out;
}

void FrameDecoder::feed(std::span<const std::uint8_t> data) {
  buf_.insert(buf_.end(), data.begin(), data.end());
}

std::optional<Message> FrameDecoder::next() {
  if (buf_.size() < kFrameHeaderBytes) {
    return std::nullopt;
  }
  std::uint32_t len = 0;
  std::memcpy(&len, buf_.data(), 4);
  if (len % 8 != 0) {
    throw TransportError("frame length " + std::to_string(len) +
                         " is not a whole number of elements (at offset " +
                         std::to_string(consumed_) + ")");
  }
  if (len / 8 > kMaxPayloadElements) {
    throw TransportError("oversized frame of " + std::to_string(len) +
                         " bytes (at offset " + std::to_string(consumed_) +
                         ")");
  }
  if (!is_valid_tag(buf_[4])) {
    throw TransportError("unknown message tag " + std::to_string(buf_[4]) +
                         " (at offset " + std::to_string(consumed_ + 4) + ")");
  }
  const std::size_t total = kFrameHeaderBytes + len;
  if (buf_.size() < total) {
    return std::nullopt;
  }
  Message msg;
  msg.tag = static_cast<MessageTag>(buf_[4]);
  msg.payload.resize(len / 8);
  for (std::size_t i = 0; i < msg.payload.size(); ++i) {
    std::uint64_t w = 0;
    for (int b = 0; b < 8; ++b) {
      w |= static_cast<std::uint64_t>(buf_[kFrameHeaderBytes + 8 * i + b])
           << (8 * b);
    }
    msg.payload[i] = w;
  }
  buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(total));
  consumed_ += total;
  return msg;
}

namespace {

struct MemChannel {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Message> queue;
  bool closed = false;
};

class MemoryEndpoint final : public Endpoint {
 public:
  MemoryEndpoint(std::shared_ptr<MemChannel> tx, std::shared_ptr<MemChannel> rx)
      : tx_(std::move(tx)), rx_(std::move(rx)) {}

  ~MemoryEndpoint() override { close(); }

  void send(const Message& msg) override {
    if (msg.payload.size() > kMaxPayloadElements) {
      throw TransportError("payload exceeds the 2^24 element limit");
    }
    {
      std::lock_guard<std::mutex> lock(tx_->mu);
      if (tx_->closed) {
        throw TransportError("channel closed");
      }
      tx_->queue.push_back(msg);
    }
    tx_->cv.notify_one();
    account_send(stats_, msg);
  }

  Message recv() override {
    std::unique_lock<std::mutex> lock(rx_->mu);
    rx_->cv.wait(lock, [&] { return !rx_->queue.empty() || rx_->closed; });
    if (rx_->queue.empty()) {
      throw TransportError("channel closed by peer");
    }
    Message msg = std::move(rx_->queue.front());
    rx_->queue.pop_front();
    return msg;
  }

  void close() override {
    for (auto& ch : {tx_, rx_}) {
      {
        std::lock_guard<std::mutex> lock(ch->mu);
        ch->closed = true;
      }
      ch->cv.notify_all();
    }
  }

  const ChannelStats& stats() const override { return stats_; }

 private:
  std::shared_ptr<MemChannel> tx_;
  std::shared_ptr<MemChannel> rx_;
  ChannelStats stats_;
};

}  // namespace

std::pair<std::unique_ptr<Endpoint>, std::unique_ptr<Endpoint>>
pair_in_memory() {
  auto a_to_b = std::make_shared<MemChannel>();
  auto b_to_a = std::make_shared<MemChannel>();
  return {std::make_unique<MemoryEndpoint>(a_to_b, b_to_a),
          std::make_unique<MemoryEndpoint>(b_to_a, a_to_b)};
}

}  // namespace biompc
