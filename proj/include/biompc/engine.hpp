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
#include <span>
#include <vector>

#include "biompc/dealer.hpp"
#include "biompc/transport.hpp"

namespace biompc {

struct ConsumptionStats {
  std::uint64_t triples = 0;
  std::uint64_t squares = 0;
  std::uint64_t randbits = 0;
  std::uint64_t masks_own = 0;
  std::uint64_t masks_peer = 0;
};

struct EngineStats {
  ChannelStats channel;
  ConsumptionStats used;
  std::size_t pending_opens = 0;
};

/// Share of the truth value of x < y; reconstructs to 0 or 1.
struct ComparisonResult {
  AuthShare bit;
};

/// One party's online runtime: drives input sharing, batched multiplication
/// and squaring, partial opening, secure comparison, and the terminal MAC
/// check over one transport endpoint.
///
/// A session is single-driver: one logical thread uses it at a time. The two
/// parties run in separate threads or processes and synchronize only through
/// the transport. Preprocessing is consumed strictly in order and never
/// reused; once an abort fires the session is poisoned and every further
/// operation throws.
class PartySession {
 public:
  PartySession(PreprocessingBundle bundle, Endpoint& link, SecureRng nonce_rng);

  PartyId party() const { return bundle_.party; }
  const FieldParams& field() const { return bundle_.params; }
  std::uint64_t session_tag() const { return session_; }

  FieldElement element(std::uint64_t v) const { return fe(field(), v); }

  // Linear operations: local, zero communication.
  AuthShare add(const AuthShare& x, const AuthShare& y) const;
  AuthShare sub(const AuthShare& x, const AuthShare& y) const;
  AuthShare scale(FieldElement c, const AuthShare& x) const;
  AuthShare add_public(FieldElement c, const AuthShare& x) const;
  AuthShare zero_share() const;
  AuthShare constant_share(FieldElement c) const;

  // Input phase: the owner broadcasts value - mask in one flush; both sides
  // then hold an authenticated share of the value.
  std::vector<AuthShare> provide_inputs(std::span<const FieldElement> values);
  std::vector<AuthShare> accept_inputs(std::size_t count);
  AuthShare provide_input(FieldElement value);
  AuthShare accept_input();

  /// Element-wise products of xs and ys. One triple per pair; all epsilon
  /// shares travel in one flush and all delta shares in a second, so a batch
  /// costs two rounds regardless of its size.
  std::vector<AuthShare> mul_batch(std::span<const AuthShare> xs,
                                   std::span<const AuthShare> ys);
  AuthShare mul(const AuthShare& x, const AuthShare& y);

  /// Element-wise squares; one square pair each, one round per batch.
  std::vector<AuthShare> square_batch(std::span<const AuthShare> xs);

  /// Reveals value shares only; the opened value is logged for the terminal
  /// MAC check before anything may depend on it.
  PublicValue partial_open(const AuthShare& x);
  std::vector<PublicValue> partial_open_batch(std::span<const AuthShare> xs);

  /// Share of (x < y). Callers must guarantee both plaintexts lie in
  /// [0, p/2); violations are not detectable online. Consumes one random bit
  /// value and exactly ell triples.
  ComparisonResult compare_less(const AuthShare& x, const AuthShare& y);

  /// Independent comparisons evaluated in lock step; same per-instance cost
  /// and code path as compare_less, with the bit-loop multiplications of all
  /// instances sharing flushes.
  std::vector<AuthShare> compare_less_batch(std::span<const AuthShare> xs,
                                            std::span<const AuthShare> ys);

  /// Batched verification of every pending opening: random linear
  /// combination with coefficients derived from a transcript hash, then
  /// commit-and-reveal of the sigma shares. Throws AbortError and poisons
  /// the session on failure; clears the log on success.
  void mac_check();

  /// Opens x, MAC-checks the whole pending log including x's opening, and
  /// returns the value only if the check passes.
  FieldElement open_output(const AuthShare& x);

  EngineStats stats() const;
  bool poisoned() const { return poisoned_; }

 private:
  struct OpenedEntry {
    FieldElement value;      // publicly opened value
    FieldElement mac_share;  // this party's MAC share of it
  };

  void require_live() const;
  [[noreturn]] void abort_session(const std::string& why, bool notify_peer);
  Message exchange(const Message& mine);
  std::vector<FieldElement> open_shares(MessageTag tag,
                                        std::span<const AuthShare> shares);
  const BeaverTriple& next_triple();
  const SquarePair& next_square();
  const RandomBitValue& next_randbit();
  const InputMask& next_mask(PartyId owner);

  PreprocessingBundle bundle_;
  Endpoint& link_;
  SecureRng nonce_rng_;
  std::uint64_t session_;

  std::size_t triple_cursor_ = 0;
  std::size_t square_cursor_ = 0;
  std::size_t randbit_cursor_ = 0;
  std::vector<std::size_t> mask_index_own_;
  std::vector<std::size_t> mask_index_peer_;
  std::size_t mask_cursor_own_ = 0;
  std::size_t mask_cursor_peer_ = 0;

  std::vector<OpenedEntry> opened_log_;
  std::uint64_t check_counter_ = 0;
  ConsumptionStats used_;
  bool poisoned_ = false;
};

}  // namespace biompc
