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

#include "biompc/bench.hpp"
#include "biompc/synth.hpp"
#include "testutil.hpp"

using namespace biompc;

namespace {

IrisTemplate flipped(const IrisTemplate& tpl) {
  IrisTemplate out = tpl;
  for (auto& b : out.bits) {
    b ^= 1;
  }
  return out;
}

IrisTemplate clear_mask_iris(SecureRng& rng, std::size_t n) {
  IrisTemplate tpl = random_iris(rng, n, 0.0);
  return tpl;
}

}  // namespace

TEST_CASE("iris self-match accepts, complement rejects") {
  FieldParams params(65521);
  const std::size_t n = 64;
  SecureRng rng(1);
  IrisTemplate base = random_iris(rng, n, 0.05);
  IrisConfig cfg{n, 7, 20, false};

  RunOptions opt;
  opt.seed = 11;
  opt.counts = estimate(Protocol::Iris, n, 1, params.ell());
  LocalProtocolRun self = run_local_iris(params, cfg, base, base, opt);
  CHECK(self.server.outcome == Outcome::Accept);
  CHECK(self.client.outcome == Outcome::Accept);

  IrisTemplate complement = flipped(base);
  complement.mask.assign(n, 0);
  IrisTemplate base_clear = base;
  base_clear.mask.assign(n, 0);
  opt.seed = 12;
  LocalProtocolRun far =
      run_local_iris(params, cfg, complement, base_clear, opt);
  CHECK(far.server.outcome == Outcome::Reject);
  CHECK(far.client.outcome == Outcome::Reject);
}

TEST_CASE("iris boundary: equality rejects") {
  // Engineer HD exactly equal to t = 1/2: two differing bits out of four.
  FieldParams params(65521);
  SecureRng rng(2);
  IrisTemplate a = clear_mask_iris(rng, 8);
  IrisTemplate b = a;
  b.bits[0] ^= 1;
  b.bits[1] ^= 1;
  b.bits[2] ^= 1;
  b.bits[3] ^= 1;  // HD = 4/8 = 1/2
  IrisConfig cfg{8, 1, 2, false};
  RunOptions opt;
  opt.seed = 13;
  opt.counts = estimate(Protocol::Iris, 8, 1, params.ell());
  LocalProtocolRun run = run_local_iris(params, cfg, a, b, opt);
  CHECK(run.server.outcome == Outcome::Reject);

  b.bits[3] ^= 1;  // HD = 3/8 < 1/2
  opt.seed = 14;
  run = run_local_iris(params, cfg, a, b, opt);
  CHECK(run.server.outcome == Outcome::Accept);
}

TEST_CASE("iris consumption and rounds match the closed form") {
  FieldParams params(kDefaultPrime);
  const std::size_t n = 64;
  const unsigned ell = params.ell();
  SecureRng rng(3);
  IrisTemplate base = random_iris(rng, n, 0.05);
  IrisTemplate mate = genuine_iris(base, rng, 0.05, 0.05);
  IrisConfig cfg{n, 7, 20, false};
  RunOptions opt;
  opt.seed = 15;
  opt.counts = estimate(Protocol::Iris, n, 1, ell);
  LocalProtocolRun run = run_local_iris(params, cfg, mate, base, opt);

  CostFormulas want = expected_costs(Protocol::Iris, n, 1, ell);
  for (const ProtocolOutput* out : {&run.server, &run.client}) {
    CHECK(out->stats.used.triples == want.triples);
    CHECK(out->stats.used.squares == 0);
    CHECK(out->stats.used.randbits == 1);
    CHECK(out->stats.channel.tuple_open_elements == want.tuple_elements);
    CHECK(out->body_rounds == want.transmissions);  // exactly 2*ell + 7
    CHECK(out->stats.pending_opens == 0);
    CHECK(out->input_rounds == 1);
    CHECK(out->output_rounds == 3);  // decision opening + commit + reveal
  }
}

TEST_CASE("public iris threshold drops the extra product") {
  FieldParams params(65521);
  const std::size_t n = 32;
  SecureRng rng(4);
  IrisTemplate base = random_iris(rng, n, 0.05);
  IrisConfig cfg{n, 7, 20, true};
  RunOptions opt;
  opt.seed = 16;
  opt.counts = estimate(Protocol::Iris, n, 1, params.ell());
  LocalProtocolRun run = run_local_iris(params, cfg, base, base, opt);
  CHECK(run.server.outcome == Outcome::Accept);
  CHECK(run.server.stats.used.triples == 3 * n + params.ell());
}

TEST_CASE("face protocol matches the oracle and boundary strictness") {
  FieldParams params(65521);
  FaceConfig cfg{1, 6, 100};
  FaceTemplate a{6, {0}};
  FaceTemplate b{6, {10}};
  RunOptions opt;
  opt.seed = 17;
  opt.counts = estimate(Protocol::Face, 1, 1, params.ell());
  // SED = 100 is not < 100: reject.
  LocalProtocolRun run = run_local_face(params, cfg, a, b, opt);
  CHECK(run.server.outcome == Outcome::Reject);

  FaceConfig cfg2{1, 6, 101};
  opt.seed = 18;
  run = run_local_face(params, cfg2, a, b, opt);
  CHECK(run.server.outcome == Outcome::Accept);

  CostFormulas want = expected_costs(Protocol::Face, 0, 1, params.ell());
  CHECK(run.server.stats.used.triples == want.triples);
  CHECK(run.server.stats.used.squares == 1);
  std::int64_t delta = static_cast<std::int64_t>(run.server.body_rounds) -
                       static_cast<std::int64_t>(want.transmissions);
  CHECK(delta >= -2);
  CHECK(delta <= 2);
}

TEST_CASE("fusion with full iris weight equals the iris-only decision") {
  FieldParams params(65521);
  const std::size_t n = 32;
  const std::size_t k = 2;
  SecureRng rng(5);
  for (int i = 0; i < 20; ++i) {
    IrisTemplate server_iris = random_iris(rng, n, 0.1);
    IrisTemplate client_iris = i % 2 == 0
                                   ? genuine_iris(server_iris, rng, 0.2, 0.1)
                                   : random_iris(rng, n, 0.1);
    FaceTemplate server_face = random_face(rng, k, 2);
    FaceTemplate client_face = random_face(rng, k, 2);

    FusionConfig cfg;
    cfg.n_bits = n;
    cfg.k = k;
    cfg.feature_bits = 2;
    cfg.fusion = quantize_fusion(make_rational(1, 1), make_rational(7, 20));
    cfg.face_range_max = 18;
    RunOptions opt;
    opt.seed = 600 + static_cast<std::uint64_t>(i);
    opt.counts = estimate(Protocol::Multimodal, n, k, params.ell());
    FusionInput client_in{client_iris, client_face, 0};
    FusionInput server_in{server_iris, server_face, 18};
    LocalProtocolRun run =
        run_local_fusion(params, cfg, client_in, server_in, opt);

    const bool iris_only =
        oracle_iris_accept(oracle_iris_hd(client_iris, server_iris), 7, 20);
    CHECK((run.server.outcome == Outcome::Accept) == iris_only);
  }
}

TEST_CASE("fusion modes: consumption accounting") {
  FieldParams params(kDefaultPrime);
  const std::size_t n = 32;
  const std::size_t k = 2;
  const unsigned ell = params.ell();
  SecureRng rng(6);
  IrisTemplate server_iris = random_iris(rng, n, 0.05);
  IrisTemplate client_iris = genuine_iris(server_iris, rng, 0.05, 0.05);
  FaceTemplate server_face = random_face(rng, k, 8);
  FaceTemplate client_face = genuine_face(server_face, rng, 4);

  FusionConfig cfg;
  cfg.n_bits = n;
  cfg.k = k;
  cfg.feature_bits = 8;
  cfg.fusion = quantize_fusion(make_rational(4, 5), make_rational(7, 20));
  cfg.face_range_max = k * 255ULL * 255ULL;
  FusionInput client_in{client_iris, client_face, 0};
  FusionInput server_in{server_iris, server_face, cfg.face_range_max};

  RunOptions opt;
  opt.counts = estimate(Protocol::Multimodal, n, k, ell);

  SUBCASE("default consumes the advertised 3N+ell+6") {
    opt.seed = 20;
    LocalProtocolRun run =
        run_local_fusion(params, cfg, client_in, server_in, opt);
    CHECK(run.server.stats.used.triples == 3 * n + ell + 6);
    CHECK(run.server.stats.used.squares == k);
    CHECK(run.server.stats.channel.tuple_open_elements ==
          6 * n + 2 * ell + 12 + k);
  }

  SUBCASE("lean mode drops the reserved products") {
    cfg.lean = true;
    opt.seed = 21;
    LocalProtocolRun run =
        run_local_fusion(params, cfg, client_in, server_in, opt);
    CHECK(run.server.stats.used.triples == 3 * n + ell + 3);
    CHECK(run.server.outcome != Outcome::Abort);
  }

  SUBCASE("paper-faithful sequencing lands within 2 of the reference count") {
    cfg.paper_faithful = true;
    opt.seed = 22;
    LocalProtocolRun run =
        run_local_fusion(params, cfg, client_in, server_in, opt);
    CHECK(run.server.stats.used.triples == 3 * n + ell + 6);
    std::int64_t delta =
        static_cast<std::int64_t>(run.server.body_rounds) -
        static_cast<std::int64_t>(2 * ell + 19);
    CHECK(delta >= -2);
    CHECK(delta <= 2);
  }

  SUBCASE("public range saves products") {
    cfg.range_public = true;
    cfg.face_range_public = cfg.face_range_max;
    opt.seed = 23;
    LocalProtocolRun run =
        run_local_fusion(params, cfg, client_in, server_in, opt);
    CHECK(run.server.stats.used.triples == 3 * n + ell + 1);
    CHECK(run.server.outcome != Outcome::Abort);
  }
}

TEST_CASE("iris threshold scale invariance") {
  FieldParams params(65521);
  const std::size_t n = 16;
  SecureRng rng(7);
  for (int i = 0; i < 10; ++i) {
    IrisTemplate base = random_iris(rng, n, 0.1);
    IrisTemplate probe = genuine_iris(base, rng, 0.3, 0.1);
    Outcome first = Outcome::Abort;
    for (std::uint64_t c : {1ULL, 3ULL, 10ULL}) {
      IrisConfig cfg{n, 7 * c, 20 * c, false};
      RunOptions opt;
      opt.seed = 800 + static_cast<std::uint64_t>(10 * i) + c;
      opt.counts = estimate(Protocol::Iris, n, 1, params.ell());
      LocalProtocolRun run = run_local_iris(params, cfg, probe, base, opt);
      REQUIRE(run.server.outcome != Outcome::Abort);
      if (c == 1) {
        first = run.server.outcome;
      } else {
        CHECK(run.server.outcome == first);
      }
    }
  }
}

TEST_CASE("range-fit violations are rejected at setup") {
  FieldParams small(251);
  IrisConfig iris_cfg{64, 7, 20, false};
  CHECK_THROWS_AS(check_iris_range(small, iris_cfg), std::invalid_argument);

  FaceConfig face_cfg{3, 8, 100};
  CHECK_THROWS_AS(check_face_range(small, face_cfg), std::invalid_argument);

  FusionConfig fusion_cfg;
  fusion_cfg.n_bits = 64;
  fusion_cfg.k = 2;
  fusion_cfg.feature_bits = 8;
  fusion_cfg.fusion = quantize_fusion(make_rational(4, 5), make_rational(7, 20));
  fusion_cfg.face_range_max = 2 * 255ULL * 255ULL;
  FieldParams mid(65521);
  CHECK_THROWS_AS(check_fusion_range(mid, fusion_cfg), std::invalid_argument);

  // The same configurations fit the 46-bit prime.
  FieldParams big(kDefaultPrime);
  CHECK_NOTHROW(check_iris_range(big, iris_cfg));
  CHECK_NOTHROW(check_face_range(big, face_cfg));
  CHECK_NOTHROW(check_fusion_range(big, fusion_cfg));
}

TEST_CASE("tcp and in-memory transports give identical runs") {
  FieldParams params(65521);
  const std::size_t n = 16;
  SecureRng rng(8);
  IrisTemplate base = random_iris(rng, n, 0.05);
  IrisTemplate probe = genuine_iris(base, rng, 0.1, 0.05);
  IrisConfig cfg{n, 7, 20, false};
  DealCounts counts = estimate(Protocol::Iris, n, 1, params.ell());

  auto dealt = [&] {
    SecureRng drng(99);
    return deal(params, counts, drng);
  };

  // In-memory.
  auto [m1, m2] = dealt();
  ProtocolOutput mem_out1, mem_out2;
  {
    auto [e1, e2] = pair_in_memory();
    SecureRng seeds(55);
    PartySession s1(std::move(m1), *e1, seeds.fork(1));
    PartySession s2(std::move(m2), *e2, seeds.fork(2));
    run_parties(
        *e1, *e2, [&] { mem_out1 = run_iris(s1, cfg, base); },
        [&] { mem_out2 = run_iris(s2, cfg, probe); });
  }

  // TCP loopback.
  auto [t1, t2] = dealt();
  ProtocolOutput tcp_out1, tcp_out2;
  {
    TcpListener listener("127.0.0.1:0");
    std::unique_ptr<Endpoint> server_ep;
    std::thread accepter([&] { server_ep = listener.accept_one(); });
    auto client_ep =
        connect_tcp("127.0.0.1:" + std::to_string(listener.port()));
    accepter.join();

    SecureRng seeds(55);
    PartySession s1(std::move(t1), *server_ep, seeds.fork(1));
    PartySession s2(std::move(t2), *client_ep, seeds.fork(2));
    run_parties(
        *server_ep, *client_ep, [&] { tcp_out1 = run_iris(s1, cfg, base); },
        [&] { tcp_out2 = run_iris(s2, cfg, probe); });
  }

  CHECK(mem_out1.outcome == tcp_out1.outcome);
  CHECK(mem_out1.decision == tcp_out1.decision);
  CHECK(mem_out2.decision == tcp_out2.decision);
  CHECK(mem_out1.stats.channel.rounds_sent ==
        tcp_out1.stats.channel.rounds_sent);
  CHECK(mem_out1.stats.channel.tuple_open_elements ==
        tcp_out1.stats.channel.tuple_open_elements);
  CHECK(mem_out1.stats.channel.aux_elements ==
        tcp_out1.stats.channel.aux_elements);
  CHECK(mem_out1.stats.channel.bytes_on_wire ==
        tcp_out1.stats.channel.bytes_on_wire);
  CHECK(mem_out1.stats.channel.transcript_hash ==
        tcp_out1.stats.channel.transcript_hash);
  CHECK(mem_out2.stats.channel.transcript_hash ==
        tcp_out2.stats.channel.transcript_hash);
}

TEST_CASE("oracle equivalence battery at the 16-bit prime") {
  CheckResult res = check_oracle_equivalence(65521, 40, /*seed=*/9);
  INFO(res.detail);
  CHECK(res.pass);
}

TEST_CASE("oracle equivalence at N = 256") {
  FieldParams params(65521);
  const std::size_t n = 256;
  SecureRng rng(31);

  for (int i = 0; i < 40; ++i) {
    IrisTemplate server_tpl = random_iris(rng, n, 0.1);
    IrisTemplate client_tpl =
        i % 2 == 0 ? genuine_iris(server_tpl, rng, 0.1 + 0.1 * (i % 3), 0.1)
                   : random_iris(rng, n, 0.1);
    IrisConfig cfg{n, 7, 20, false};
    RunOptions opt;
    opt.seed = 7000 + static_cast<std::uint64_t>(i);
    opt.counts = estimate(Protocol::Iris, n, 1, params.ell());
    LocalProtocolRun run =
        run_local_iris(params, cfg, client_tpl, server_tpl, opt);
    REQUIRE(run.server.outcome != Outcome::Abort);
    const bool oracle =
        oracle_iris_accept(oracle_iris_hd(client_tpl, server_tpl), 7, 20);
    CHECK((run.server.outcome == Outcome::Accept) == oracle);
    CHECK(run.server.decision == run.client.decision);
  }

  // Fusion at N = 256 needs 1-bit features to stay below p/2 at this prime.
  const std::size_t k = 2;
  for (int i = 0; i < 40; ++i) {
    IrisTemplate server_iris = random_iris(rng, n, 0.1);
    IrisTemplate client_iris =
        i % 2 == 0 ? genuine_iris(server_iris, rng, 0.1 + 0.1 * (i % 3), 0.1)
                   : random_iris(rng, n, 0.1);
    FaceTemplate server_face = random_face(rng, k, 1);
    FaceTemplate client_face = random_face(rng, k, 1);

    FusionConfig cfg;
    cfg.n_bits = n;
    cfg.k = k;
    cfg.feature_bits = 1;
    cfg.fusion = quantize_fusion(make_rational(4, 5), make_rational(7, 20));
    cfg.face_range_max = k;
    const std::uint64_t range = 1 + rng.below(k);
    RunOptions opt;
    opt.seed = 8000 + static_cast<std::uint64_t>(i);
    opt.counts = estimate(Protocol::Multimodal, n, k, params.ell());
    FusionInput client_in{client_iris, client_face, 0};
    FusionInput server_in{server_iris, server_face, range};
    LocalProtocolRun run =
        run_local_fusion(params, cfg, client_in, server_in, opt);
    REQUIRE(run.server.outcome != Outcome::Abort);

    IrisScore score = oracle_iris_hd(client_iris, server_iris);
    std::uint64_t sed = oracle_face_sed(client_face, server_face);
    CHECK((run.server.outcome == Outcome::Accept) ==
          oracle_fusion_accept(score, sed, cfg.fusion, range));
  }
}

TEST_CASE("synthetic data separates at the reference threshold") {
  CheckResult res = check_synthetic_separation(/*seed=*/10);
  INFO(res.detail);
  CHECK(res.pass);
}
