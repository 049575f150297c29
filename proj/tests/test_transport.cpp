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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "biompc/rng.hpp"
#include "biompc/transport.hpp"

using namespace biompc;

namespace {

Message random_message(SecureRng& rng) {
  Message msg;
  msg.tag = static_cast<MessageTag>(1 + rng.below(7));
  msg.payload.resize(rng.below(64));
  for (auto& w : msg.payload) {
    w = rng.next_u64();
  }
  return msg;
}

}  // namespace

TEST_CASE("frame encode/decode round trip") {
  SecureRng rng(1);
  FrameDecoder dec;
  for (int i = 0; i < 10000; ++i) {
    Message msg = random_message(rng);
    auto frame = encode_frame(msg);
    CHECK(frame.size() == framed_size(msg));
    dec.feed(frame);
    auto got = dec.next();
    REQUIRE(got.has_value());
    CHECK(got->tag == msg.tag);
    CHECK(got->payload == msg.payload);
    CHECK(!dec.next().has_value());
  }
  CHECK(dec.at_boundary());
}

TEST_CASE("decoder tolerates arbitrary fragmentation") {
  SecureRng rng(2);
  std::vector<Message> sent;
  std::vector<std::uint8_t> stream;
  for (int i = 0; i < 300; ++i) {
    Message msg = random_message(rng);
    auto frame = encode_frame(msg);
    stream.insert(stream.end(), frame.begin(), frame.end());
    sent.push_back(std::move(msg));
  }

  FrameDecoder dec;
  std::vector<Message> got;
  std::size_t pos = 0;
  while (pos < stream.size()) {
    std::size_t chunk = std::min<std::size_t>(1 + rng.below(13),
                                              stream.size() - pos);
    dec.feed({stream.data() + pos, chunk});
    pos += chunk;
    while (auto msg = dec.next()) {
      got.push_back(*std::move(msg));
    }
  }
  REQUIRE(got.size() == sent.size());
  for (std::size_t i = 0; i < sent.size(); ++i) {
    CHECK(got[i].tag == sent[i].tag);
    CHECK(got[i].payload == sent[i].payload);
  }
  CHECK(dec.at_boundary());
}

TEST_CASE("decoder rejects malformed frames with offsets") {
  SUBCASE("unknown tag") {
    FrameDecoder dec;
    std::uint8_t frame[] = {0, 0, 0, 0, 99};
    dec.feed(frame);
    CHECK_THROWS_AS(dec.next(), TransportError);
  }
  SUBCASE("ragged length") {
    FrameDecoder dec;
    std::uint8_t frame[] = {3, 0, 0, 0, 1, 9, 9, 9};
    dec.feed(frame);
    CHECK_THROWS_AS(dec.next(), TransportError);
  }
  SUBCASE("oversize") {
    FrameDecoder dec;
    // 2^31 bytes claimed
    std::uint8_t frame[] = {0, 0, 0, 0x80, 1};
    dec.feed(frame);
    CHECK_THROWS_AS(dec.next(), TransportError);
  }
  SUBCASE("offset names the failing frame") {
    FrameDecoder dec;
    Message good{MessageTag::Open, {1, 2}};
    auto frame = encode_frame(good);
    dec.feed(frame);
    (void)dec.next();
    std::uint8_t bad[] = {0, 0, 0, 0, 42};
    dec.feed(bad);
    try {
      (void)dec.next();
      FAIL("expected TransportError");
    } catch (const TransportError& e) {
      // The bad tag sits 4 bytes into the second frame.
      CHECK(std::string(e.what()).find(std::to_string(frame.size() + 4)) !=
            std::string::npos);
    }
  }
}

TEST_CASE("in-memory pair: FIFO, independent stats, bucket accounting") {
  auto [a, b] = pair_in_memory();

  a->send(Message{MessageTag::EpsilonBatch, {1, 2, 3}});
  a->send(Message{MessageTag::DeltaBatch, {4}});
  a->send(Message{MessageTag::Open, {5}});
  a->send(Message{MessageTag::Control, {}});

  CHECK(b->recv().payload == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(b->recv().tag == MessageTag::DeltaBatch);
  CHECK(b->recv().tag == MessageTag::Open);
  CHECK(b->recv().payload.empty());

  CHECK(a->stats().rounds_sent == 4);
  CHECK(a->stats().tuple_open_elements == 4);  // 3 epsilon + 1 delta
  CHECK(a->stats().aux_elements == 1);         // the open
  CHECK(a->stats().bytes_on_wire == (5 + 24) + (5 + 8) + (5 + 8) + 5);
  CHECK(b->stats().rounds_sent == 0);

  b->send(Message{MessageTag::Open, {7}});
  CHECK(a->recv().payload == std::vector<std::uint64_t>{7});
  CHECK(b->stats().rounds_sent == 1);
}

TEST_CASE("closing unblocks a pending recv") {
  auto [a, b] = pair_in_memory();
  std::thread closer([&a] {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    a->close();
  });
  CHECK_THROWS_AS(b->recv(), TransportError);
  closer.join();
}

TEST_CASE("messages queued before close still arrive") {
  auto [a, b] = pair_in_memory();
  a->send(Message{MessageTag::Open, {11}});
  a->close();
  CHECK(b->recv().payload == std::vector<std::uint64_t>{11});
  CHECK_THROWS_AS(b->recv(), TransportError);
}

TEST_CASE("tcp endpoints behave like the in-memory pair") {
  TcpListener listener("127.0.0.1:0");
  std::unique_ptr<Endpoint> server;
  std::thread accepter([&] { server = listener.accept_one(); });
  auto client = connect_tcp("127.0.0.1:" + std::to_string(listener.port()));
  accepter.join();

  SecureRng rng(3);
  std::vector<Message> sent;
  for (int i = 0; i < 200; ++i) {
    sent.push_back(random_message(rng));
  }

  std::thread pump([&] {
    for (const Message& m : sent) {
      server->send(m);
    }
    for (int i = 0; i < 200; ++i) {
      Message echo = server->recv();
      CHECK(echo.payload == sent[static_cast<std::size_t>(i)].payload);
    }
  });
  for (const Message& m : sent) {
    Message got = client->recv();
    CHECK(got.tag == m.tag);
    CHECK(got.payload == m.payload);
    client->send(got);
  }
  pump.join();

  // Same frames, same counters and transcripts as the in-memory transport.
  auto [ma, mb] = pair_in_memory();
  for (const Message& m : sent) {
    ma->send(m);
  }
  CHECK(server->stats().rounds_sent == ma->stats().rounds_sent);
  CHECK(server->stats().bytes_on_wire == ma->stats().bytes_on_wire);
  CHECK(server->stats().tuple_open_elements == ma->stats().tuple_open_elements);
  CHECK(server->stats().aux_elements == ma->stats().aux_elements);
  CHECK(server->stats().transcript_hash == ma->stats().transcript_hash);
}

TEST_CASE("simultaneous large sends do not deadlock over tcp") {
  TcpListener listener("127.0.0.1:0");
  std::unique_ptr<Endpoint> server;
  std::thread accepter([&] { server = listener.accept_one(); });
  auto client = connect_tcp("127.0.0.1:" + std::to_string(listener.port()));
  accepter.join();

  Message big{MessageTag::EpsilonBatch, std::vector<std::uint64_t>(300000, 7)};
  std::thread side([&] {
    server->send(big);
    Message got = server->recv();
    CHECK(got.payload.size() == big.payload.size());
  });
  client->send(big);
  Message got = client->recv();
  CHECK(got.payload.size() == big.payload.size());
  side.join();
}

TEST_CASE("peer disconnect mid-frame is a transport error") {
  TcpListener listener("127.0.0.1:0");
  std::unique_ptr<Endpoint> server;
  std::thread accepter([&] { server = listener.accept_one(); });
  auto client = connect_tcp("127.0.0.1:" + std::to_string(listener.port()));
  accepter.join();

  server->send(Message{MessageTag::Open, {1}});
  server->close();
  CHECK(client->recv().payload == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(client->recv(), TransportError);
}

TEST_CASE("oversized payloads are refused at send") {
  auto [a, b] = pair_in_memory();
  Message big;
  big.tag = MessageTag::Open;
  big.payload.resize(kMaxPayloadElements + 1);
  CHECK_THROWS_AS(a->send(big), TransportError);
}
