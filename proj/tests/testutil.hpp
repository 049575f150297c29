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

#include <utility>
#include <vector>

#include "biompc/engine.hpp"
#include "biompc/selfcheck.hpp"

namespace biompc::test {

/// Dealer-side test fixture: builds bundle pairs with chosen correlated
/// values, so tests can pin specific triples or random-bit draws instead of
/// taking whatever the production dealer samples.
class TestDealer {
 public:
  TestDealer(const FieldParams& params, std::uint64_t seed)
      : params_(params), rng_(seed) {
    rng_.fill_bytes(id_);
    alpha1_ = fe_rand(params_, rng_);
    alpha2_ = fe_rand(params_, rng_);
    b1_ = PreprocessingBundle{params_, PartyId::P1, MacKeyShare{alpha1_},
                              id_,     {},          {},
                              {},      {}};
    b2_ = PreprocessingBundle{params_, PartyId::P2, MacKeyShare{alpha2_},
                              id_,     {},          {},
                              {},      {}};
  }

  FieldElement alpha() const { return fe_add(alpha1_, alpha2_); }
  std::uint64_t session() const { return b1_.session(); }

  std::pair<AuthShare, AuthShare> share(std::uint64_t value) {
    FieldElement v = fe(params_, value);
    FieldElement v1 = fe_rand(params_, rng_);
    FieldElement v2 = fe_sub(v, v1);
    FieldElement mac = fe_mul(alpha(), v);
    FieldElement m1 = fe_rand(params_, rng_);
    FieldElement m2 = fe_sub(mac, m1);
    return {AuthShare{v1, m1, session()}, AuthShare{v2, m2, session()}};
  }

  void add_triple(std::uint64_t a, std::uint64_t b) {
    auto [a1, a2] = share(a);
    auto [b1, b2] = share(b);
    auto [c1, c2] = share(fe_mul(fe(params_, a), fe(params_, b)).value);
    b1_.triples.push_back({a1, b1, c1});
    b2_.triples.push_back({a2, b2, c2});
  }

  void add_square(std::uint64_t a) {
    auto [a1, a2] = share(a);
    auto [s1, s2] = share(fe_mul(fe(params_, a), fe(params_, a)).value);
    b1_.squares.push_back({a1, s1});
    b2_.squares.push_back({a2, s2});
  }

  /// Random bit value with a prescribed r.
  void add_randbit(std::uint64_t r) {
    auto [r1, r2] = share(r);
    RandomBitValue v1{r1, {}};
    RandomBitValue v2{r2, {}};
    for (std::uint8_t bit : fe_bits(params_, fe(params_, r))) {
      auto [s1, s2] = share(bit);
      v1.bits.push_back(s1);
      v2.bits.push_back(s2);
    }
    b1_.randbits.push_back(std::move(v1));
    b2_.randbits.push_back(std::move(v2));
  }

  void add_mask(PartyId owner, std::uint64_t m) {
    auto [m1, m2] = share(m);
    FieldElement plain = fe(params_, m);
    b1_.masks.push_back({m1, owner,
                         owner == PartyId::P1
                             ? std::optional<FieldElement>(plain)
                             : std::nullopt});
    b2_.masks.push_back({m2, owner,
                         owner == PartyId::P2
                             ? std::optional<FieldElement>(plain)
                             : std::nullopt});
  }

  std::pair<PreprocessingBundle, PreprocessingBundle> take() {
    return {std::move(b1_), std::move(b2_)};
  }

 private:
  FieldParams params_;
  SecureRng rng_;
  std::array<std::uint8_t, 16> id_{};
  FieldElement alpha1_, alpha2_;
  PreprocessingBundle b1_{FieldParams(2), PartyId::P1, {}, {}, {}, {}, {}, {}};
  PreprocessingBundle b2_{FieldParams(2), PartyId::P2, {}, {}, {}, {}, {}, {}};
};

/// Runs the same closure as both parties over an in-memory pair and returns
/// each side's result.
template <typename Fn>
auto run_pair(PreprocessingBundle b1, PreprocessingBundle b2, Fn&& fn,
              std::uint64_t nonce_seed = 17) {
  auto [e1, e2] = pair_in_memory();
  SecureRng seeds(nonce_seed);
  PartySession s1(std::move(b1), *e1, seeds.fork(1));
  PartySession s2(std::move(b2), *e2, seeds.fork(2));
  using Result = decltype(fn(s1));
  std::pair<Result, Result> out;
  run_parties(
      *e1, *e2, [&] { out.first = fn(s1); }, [&] { out.second = fn(s2); });
  return out;
}

}  // namespace biompc::test
