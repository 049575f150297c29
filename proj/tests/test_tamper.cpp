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

#include "biompc/synth.hpp"
#include "testutil.hpp"

using namespace biompc;

namespace {

struct Scenario {
  FieldParams params{kDefaultPrime};
  std::size_t n = 16;
  std::size_t k = 2;
  FusionConfig cfg;
  FusionInput client_in;
  FusionInput server_in;

  explicit Scenario(std::uint64_t seed) {
    SecureRng rng(seed);
    cfg.n_bits = n;
    cfg.k = k;
    cfg.feature_bits = 4;
    cfg.fusion = quantize_fusion(make_rational(4, 5), make_rational(7, 20));
    cfg.face_range_max = k * 15ULL * 15ULL;
    IrisTemplate server_iris = random_iris(rng, n, 0.05);
    client_in.iris = genuine_iris(server_iris, rng, 0.1, 0.05);
    server_in.iris = server_iris;
    FaceTemplate server_face = random_face(rng, k, 4);
    client_in.face = genuine_face(server_face, rng, 2);
    server_in.face = server_face;
    server_in.face_range = cfg.face_range_max;
  }

  LocalProtocolRun run(const std::optional<TamperSpec>& tamper,
                       std::uint64_t seed) const {
    RunOptions opt;
    opt.seed = seed;
    opt.counts = estimate(Protocol::Multimodal, n, k, params.ell());
    opt.tamper = tamper;
    return run_local_fusion(params, cfg, client_in, server_in, opt);
  }
};

}  // namespace

TEST_CASE("honest runs pass the MAC check") {
  Scenario sc(1);
  LocalProtocolRun run = sc.run(std::nullopt, 2);
  CHECK(run.server.outcome != Outcome::Abort);
  CHECK(run.server.outcome == run.client.outcome);
  CHECK(run.server.decision == run.client.decision);
}

TEST_CASE("each wire position aborts the victim when tampered") {
  struct Position {
    MessageTag tag;
    std::size_t occurrence;
    const char* label;
  };
  const std::vector<Position> positions = {
      {MessageTag::EpsilonBatch, 0, "first multiplication epsilon"},
      {MessageTag::DeltaBatch, 0, "first multiplication delta"},
      {MessageTag::EpsilonBatch, 1, "second layer epsilon"},
      {MessageTag::EpsilonBatch, 2, "square epsilon"},
      {MessageTag::Open, 0, "comparison s opening"},
      {MessageTag::Open, 1, "decision opening"},
      {MessageTag::SigmaReveal, 0, "sigma reveal"},
  };

  Scenario sc(3);
  std::uint64_t seed = 10;
  for (const Position& pos : positions) {
    for (PartyId sender : {PartyId::P1, PartyId::P2}) {
      CAPTURE(pos.label);
      CAPTURE(static_cast<int>(sender));
      TamperSpec spec;
      spec.sender = sender;
      spec.tag = pos.tag;
      spec.occurrence = pos.occurrence;
      spec.element = 0;
      spec.delta = 1;
      LocalProtocolRun run = sc.run(spec, ++seed);
      const ProtocolOutput& victim =
          sender == PartyId::P1 ? run.client : run.server;
      CHECK(victim.outcome == Outcome::Abort);
      CHECK(victim.decision == -1);
    }
  }
}

TEST_CASE("sigma commitment tampering aborts too") {
  Scenario sc(4);
  TamperSpec spec;
  spec.sender = PartyId::P2;
  spec.tag = MessageTag::SigmaCommit;
  spec.occurrence = 0;
  spec.element = 2;
  spec.delta = 12345;
  LocalProtocolRun run = sc.run(spec, 77);
  CHECK(run.server.outcome == Outcome::Abort);
  CHECK(run.server.decision == -1);
}

TEST_CASE("randomized tamper battery") {
  CheckResult res = check_tamper_abort(/*trials=*/120, /*seed=*/5);
  INFO(res.detail);
  CHECK(res.pass);
}

TEST_CASE("input-diff wire tampering is caught by the terminal check") {
  // The owner folds its own broadcast value into the mask while the receiver
  // folds the altered one, so the resulting share carries an inconsistent
  // MAC and the first opening that touches it fails the check.
  Scenario sc(6);
  TamperSpec spec;
  spec.sender = PartyId::P2;
  spec.tag = MessageTag::InputDiff;
  spec.occurrence = 0;
  spec.element = 0;
  spec.delta = 1;
  LocalProtocolRun run = sc.run(spec, 99);
  CHECK(run.server.outcome == Outcome::Abort);
  CHECK(run.client.outcome == Outcome::Abort);
}

TEST_CASE("aborting party sends a control frame the peer understands") {
  // Tamper the epsilon flush: both parties detect the inconsistent openings
  // in the terminal check and abort; neither hangs.
  Scenario sc(7);
  TamperSpec spec;
  spec.sender = PartyId::P1;
  spec.tag = MessageTag::EpsilonBatch;
  spec.occurrence = 0;
  spec.element = 3;
  spec.delta = 42;
  LocalProtocolRun run = sc.run(spec, 123);
  CHECK(run.client.outcome == Outcome::Abort);
  CHECK(run.server.outcome == Outcome::Abort);
}
