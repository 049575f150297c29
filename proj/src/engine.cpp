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

#include "biompc/engine.hpp"

#include <cstring>

namespace biompc {

namespace {

constexpr char kMacCheckDomain[] = "biompc.maccheck.v1";
constexpr char kCommitDomain[] = "biompc.commit.v1";

std::span<const std::uint8_t> as_bytes(const char* s) {
  return {reinterpret_cast<const std::uint8_t*>(s), std::strlen(s)};
}

std::array<std::uint64_t, 4> digest_words(
    const std::array<std::uint8_t, 32>& digest) {
  std::array<std::uint64_t, 4> words{};
  for (int i = 0; i < 4; ++i) {
    for (int b = 0; b < 8; ++b) {
      words[i] |= static_cast<std::uint64_t>(digest[8 * i + b]) << (8 * b);
    }
  }
  return words;
}

}  // namespace

PartySession::PartySession(PreprocessingBundle bundle, Endpoint& link,
                           SecureRng nonce_rng)
    : bundle_(std::move(bundle)),
      link_(link),
      nonce_rng_(std::move(nonce_rng)),
      session_(bundle_.session()) {
  for (std::size_t i = 0; i < bundle_.masks.size(); ++i) {
    if (bundle_.masks[i].owner == bundle_.party) {
      mask_index_own_.push_back(i);
    } else {
      mask_index_peer_.push_back(i);
    }
  }
}

void PartySession::require_live() const {
  if (poisoned_) {
    throw AbortError("session poisoned by a previous abort");
  }
}

void PartySession::abort_session(const std::string& why, bool notify_peer) {
  poisoned_ = true;
  if (notify_peer) {
    try {
      link_.send(Message{MessageTag::Control, {}});
    } catch (const TransportError&) {
      // peer already gone
    }
  }
  throw AbortError(why);
}

Message PartySession::exchange(const Message& mine) {
  link_.send(mine);
  Message got = link_.recv();
  if (got.tag == MessageTag::Control) {
    abort_session("peer signalled abort", false);
  }
  if (got.tag != mine.tag) {
    throw TransportError("protocol desync: expected tag " +
                         std::to_string(static_cast<int>(mine.tag)) +
                         ", got " + std::to_string(static_cast<int>(got.tag)));
  }
  if (got.payload.size() != mine.payload.size()) {
    throw TransportError("protocol desync: payload size mismatch");
  }
  return got;
}

AuthShare PartySession::add(const AuthShare& x, const AuthShare& y) const {
  return sh_add(x, y);
}

AuthShare PartySession::sub(const AuthShare& x, const AuthShare& y) const {
  return sh_sub(x, y);
}

AuthShare PartySession::scale(FieldElement c, const AuthShare& x) const {
  return sh_scale(c, x);
}

AuthShare PartySession::add_public(FieldElement c, const AuthShare& x) const {
  return sh_add_public(c, x, bundle_.key, bundle_.party);
}

AuthShare PartySession::zero_share() const {
  FieldElement z = fe(field(), 0);
  return AuthShare{z, z, session_};
}

AuthShare PartySession::constant_share(FieldElement c) const {
  return add_public(c, zero_share());
}

const BeaverTriple& PartySession::next_triple() {
  if (triple_cursor_ >= bundle_.triples.size()) {
    throw ExhaustedError("preprocessing exhausted: triples");
  }
  ++used_.triples;
  return bundle_.triples[triple_cursor_++];
}

const SquarePair& PartySession::next_square() {
  if (square_cursor_ >= bundle_.squares.size()) {
    throw ExhaustedError("preprocessing exhausted: square pairs");
  }
  ++used_.squares;
  return bundle_.squares[square_cursor_++];
}

const RandomBitValue& PartySession::next_randbit() {
  if (randbit_cursor_ >= bundle_.randbits.size()) {
    throw ExhaustedError("preprocessing exhausted: random bit values");
  }
  ++used_.randbits;
  return bundle_.randbits[randbit_cursor_++];
}

const InputMask& PartySession::next_mask(PartyId owner) {
  auto& index = owner == bundle_.party ? mask_index_own_ : mask_index_peer_;
  auto& cursor = owner == bundle_.party ? mask_cursor_own_ : mask_cursor_peer_;
  if (cursor >= index.size()) {
    throw ExhaustedError("preprocessing exhausted: input masks for party " +
                         std::to_string(static_cast<int>(owner)));
  }
  (owner == bundle_.party ? used_.masks_own : used_.masks_peer) += 1;
  return bundle_.masks[index[cursor++]];
}

std::vector<AuthShare> PartySession::provide_inputs(
    std::span<const FieldElement> values) {
  require_live();
  Message diff{MessageTag::InputDiff, {}};
  diff.payload.reserve(values.size());
  std::vector<AuthShare> out;
  out.reserve(values.size());
  for (const FieldElement& v : values) {
    if (v.modulus != field().p()) {
      throw MismatchError("input value from a different field");
    }
    const InputMask& mask = next_mask(bundle_.party);
    FieldElement d = fe_sub(v, *mask.m_plain);
    diff.payload.push_back(d.value);
    out.push_back(add_public(d, mask.m));
  }
  link_.send(diff);
  return out;
}

std::vector<AuthShare> PartySession::accept_inputs(std::size_t count) {
  require_live();
  Message diff = link_.recv();
  if (diff.tag == MessageTag::Control) {
    abort_session("peer signalled abort", false);
  }
  if (diff.tag != MessageTag::InputDiff || diff.payload.size() != count) {
    throw TransportError("protocol desync: expected input diff of " +
                         std::to_string(count) + " elements");
  }
  std::vector<AuthShare> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const InputMask& mask = next_mask(other_party(bundle_.party));
    out.push_back(add_public(fe(field(), diff.payload[i]), mask.m));
  }
  return out;
}

AuthShare PartySession::provide_input(FieldElement value) {
  return provide_inputs({&value, 1}).front();
}

AuthShare PartySession::accept_input() { return accept_inputs(1).front(); }

std::vector<FieldElement> PartySession::open_shares(
    MessageTag tag, std::span<const AuthShare> shares) {
  Message mine{tag, {}};
  mine.payload.reserve(shares.size());
  for (const AuthShare& s : shares) {
    mine.payload.push_back(s.val.value);
  }
  Message theirs = exchange(mine);
  std::vector<FieldElement> opened;
  opened.reserve(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    FieldElement value =
        fe_add(shares[i].val, fe(field(), theirs.payload[i]));
    opened.push_back(value);
    opened_log_.push_back({value, shares[i].mac});
  }
  return opened;
}

std::vector<AuthShare> PartySession::mul_batch(std::span<const AuthShare> xs,
                                               std::span<const AuthShare> ys) {
  require_live();
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("mul_batch: operand count mismatch");
  }
  const std::size_t n = xs.size();
  std::vector<const BeaverTriple*> triples(n);
  std::vector<AuthShare> eps_sh(n), del_sh(n);
  for (std::size_t i = 0; i < n; ++i) {
    triples[i] = &next_triple();
    eps_sh[i] = sub(xs[i], triples[i]->a);
    del_sh[i] = sub(ys[i], triples[i]->b);
  }
  // Two flushes for the whole batch: all epsilons, then all deltas.
  std::vector<FieldElement> eps = open_shares(MessageTag::EpsilonBatch, eps_sh);
  std::vector<FieldElement> del = open_shares(MessageTag::DeltaBatch, del_sh);

  std::vector<AuthShare> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BeaverTriple& t = *triples[i];
    AuthShare z = add(t.c, add(scale(eps[i], t.b), scale(del[i], t.a)));
    out.push_back(add_public(fe_mul(eps[i], del[i]), z));
  }
  return out;
}

AuthShare PartySession::mul(const AuthShare& x, const AuthShare& y) {
  return mul_batch({&x, 1}, {&y, 1}).front();
}

std::vector<AuthShare> PartySession::square_batch(
    std::span<const AuthShare> xs) {
  require_live();
  const std::size_t n = xs.size();
  std::vector<const SquarePair*> pairs(n);
  std::vector<AuthShare> eps_sh(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairs[i] = &next_square();
    eps_sh[i] = sub(xs[i], pairs[i]->a);
  }
  std::vector<FieldElement> eps = open_shares(MessageTag::EpsilonBatch, eps_sh);

  FieldElement two = element(2);
  std::vector<AuthShare> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SquarePair& sq = *pairs[i];
    AuthShare z = add(sq.a2, scale(fe_mul(two, eps[i]), sq.a));
    out.push_back(add_public(fe_mul(eps[i], eps[i]), z));
  }
  return out;
}

PublicValue PartySession::partial_open(const AuthShare& x) {
  return partial_open_batch({&x, 1}).front();
}

std::vector<PublicValue> PartySession::partial_open_batch(
    std::span<const AuthShare> xs) {
  require_live();
  std::vector<FieldElement> opened = open_shares(MessageTag::Open, xs);
  std::vector<PublicValue> out;
  out.reserve(opened.size());
  for (const FieldElement& v : opened) {
    out.push_back(PublicValue{v, PublicValue::Source::Opened});
  }
  return out;
}

ComparisonResult PartySession::compare_less(const AuthShare& x,
                                            const AuthShare& y) {
  return ComparisonResult{compare_less_batch({&x, 1}, {&y, 1}).front()};
}

std::vector<AuthShare> PartySession::compare_less_batch(
    std::span<const AuthShare> xs, std::span<const AuthShare> ys) {
  require_live();
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("compare_less_batch: operand count mismatch");
  }
  const std::size_t n = xs.size();
  if (n == 0) {
    return {};
  }
  const unsigned ell = field().ell();
  if (field().p() <= 2) {
    throw std::invalid_argument("comparison requires an odd modulus");
  }

  std::vector<const RandomBitValue*> rbs(n);
  std::vector<AuthShare> s_sh(n);
  for (std::size_t i = 0; i < n; ++i) {
    rbs[i] = &next_randbit();
    AuthShare z = sub(xs[i], ys[i]);
    s_sh[i] = add(add(z, z), rbs[i]->r);
  }
  std::vector<PublicValue> s = partial_open_batch(s_sh);

  auto s_bit = [&](std::size_t i, unsigned j) -> int {
    return static_cast<int>((s[i].val.value >> j) & 1);
  };

  // delta accumulates (s < r) scanning the bits from least significant up:
  // a strictly smaller prefix survives only while the higher bits agree.
  std::vector<AuthShare> delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = s_bit(i, 0) == 0 ? rbs[i]->bits[0] : zero_share();
  }

  const FieldElement one = element(1);
  const FieldElement minus_one = fe_neg(one);
  const FieldElement two = element(2);
  const FieldElement minus_two = fe_neg(two);

  std::vector<AuthShare> lhs(n), rhs(n);
  for (unsigned j = 1; j < ell; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const AuthShare& rj = rbs[i]->bits[j];
      if (s_bit(i, j) == 0) {
        lhs[i] = delta[i];
        rhs[i] = add_public(one, scale(minus_one, rj));  // 1 - r_j
      } else {
        lhs[i] = rj;
        rhs[i] = delta[i];
      }
    }
    std::vector<AuthShare> prod = mul_batch(lhs, rhs);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = s_bit(i, j) == 0 ? add(rbs[i]->bits[j], prod[i]) : prod[i];
    }
  }

  // Final LSB combination. LSB(2(x-y) mod p) = delta ^ s_0 ^ r_0 and that
  // bit is 1 exactly when x < y, so the XOR itself is the result share.
  for (std::size_t i = 0; i < n; ++i) {
    lhs[i] = delta[i];
    rhs[i] = rbs[i]->bits[0];
  }
  std::vector<AuthShare> prod = mul_batch(lhs, rhs);

  std::vector<AuthShare> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AuthShare& r0 = rbs[i]->bits[0];
    if (s_bit(i, 0) == 0) {
      // delta + r0 - 2*delta*r0
      out[i] = add(add(delta[i], r0), scale(minus_two, prod[i]));
    } else {
      // 1 - delta - r0 + 2*delta*r0
      AuthShare acc = add(scale(minus_one, add(delta[i], r0)),
                          scale(two, prod[i]));
      out[i] = add_public(one, acc);
    }
  }
  return out;
}

void PartySession::mac_check() {
  require_live();
  if (opened_log_.empty()) {
    return;
  }

  // Both parties derive the same coefficients from their view of the opened
  // values; any divergence randomizes the sigmas and fails the zero test.
  Sha256 hasher;
  hasher.update(as_bytes(kMacCheckDomain));
  hasher.update_u64(field().p());
  hasher.update_u64(session_);
  hasher.update_u64(check_counter_);
  hasher.update_u64(opened_log_.size());
  for (const OpenedEntry& e : opened_log_) {
    hasher.update_u64(e.value.value);
  }
  SecureRng coeff_rng(hasher.finish());

  FieldElement sigma = fe(field(), 0);
  for (const OpenedEntry& e : opened_log_) {
    FieldElement rho = fe_rand(field(), coeff_rng);
    FieldElement diff = fe_sub(e.mac_share, fe_mul(bundle_.key.alpha, e.value));
    sigma = fe_add(sigma, fe_mul(rho, diff));
  }

  std::array<std::uint8_t, 16> nonce{};
  nonce_rng_.fill_bytes(nonce);
  auto commitment = [&](PartyId who, std::uint64_t sigma_value,
                        std::span<const std::uint64_t> nonce_words) {
    Sha256 h;
    h.update(as_bytes(kCommitDomain));
    h.update_u64(static_cast<std::uint64_t>(who));
    h.update_u64(sigma_value);
    h.update_u64(nonce_words[0]);
    h.update_u64(nonce_words[1]);
    return digest_words(h.finish());
  };

  std::uint64_t nonce_words[2] = {0, 0};
  for (int i = 0; i < 8; ++i) {
    nonce_words[0] |= static_cast<std::uint64_t>(nonce[i]) << (8 * i);
    nonce_words[1] |= static_cast<std::uint64_t>(nonce[8 + i]) << (8 * i);
  }
  auto my_commit = commitment(bundle_.party, sigma.value, nonce_words);

  Message commit_msg{MessageTag::SigmaCommit,
                     {my_commit[0], my_commit[1], my_commit[2], my_commit[3]}};
  Message peer_commit = exchange(commit_msg);

  Message reveal_msg{MessageTag::SigmaReveal,
                     {sigma.value, nonce_words[0], nonce_words[1]}};
  Message peer_reveal = exchange(reveal_msg);

  std::uint64_t peer_nonce[2] = {peer_reveal.payload[1],
                                 peer_reveal.payload[2]};
  auto expect = commitment(other_party(bundle_.party), peer_reveal.payload[0],
                           peer_nonce);
  for (int i = 0; i < 4; ++i) {
    if (expect[i] != peer_commit.payload[static_cast<std::size_t>(i)]) {
      abort_session("MAC check failed: sigma commitment mismatch", true);
    }
  }

  FieldElement peer_sigma = fe(field(), peer_reveal.payload[0]);
  if (fe_add(sigma, peer_sigma).value != 0) {
    abort_session("MAC check failed: opened values are inconsistent", true);
  }

  opened_log_.clear();
  ++check_counter_;
}

FieldElement PartySession::open_output(const AuthShare& x) {
  require_live();
  PublicValue opened = partial_open(x);
  mac_check();
  return opened.val;
}

EngineStats PartySession::stats() const {
  return EngineStats{link_.stats(), used_, opened_log_.size()};
}

}  // namespace biompc
