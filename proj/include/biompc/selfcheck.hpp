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

#include <functional>
#include <optional>
#include <ostream>

#include "biompc/protocols.hpp"

namespace biompc {

/// Adds a fixed nonzero field element to one element of the n-th outgoing
/// message of a given tag — a cheating sender, as seen by the receiver.
struct TamperSpec {
  PartyId sender = PartyId::P1;
  MessageTag tag = MessageTag::EpsilonBatch;
  std::size_t occurrence = 0;  // n-th message carrying this tag, 0-based
  std::size_t element = 0;     // payload index, reduced mod payload size
  std::uint64_t delta = 1;     // added mod p; must be nonzero
};

class TamperEndpoint final : public Endpoint {
 public:
  TamperEndpoint(Endpoint& inner, const TamperSpec& spec, std::uint64_t p)
      : inner_(inner), spec_(spec), p_(p) {}

  void send(const Message& msg) override;
  Message recv() override { return inner_.recv(); }
  void close() override { inner_.close(); }
  const ChannelStats& stats() const override { return inner_.stats(); }
  bool fired() const { return fired_; }

 private:
  Endpoint& inner_;
  TamperSpec spec_;
  std::uint64_t p_;
  std::size_t seen_ = 0;
  bool fired_ = false;
};

/// Runs the two party closures on two threads. A closure that throws closes
/// its endpoint so the peer cannot block forever; the first captured
/// exception is rethrown after both sides finish.
void run_parties(Endpoint& e1, Endpoint& e2,
                 const std::function<void()>& party1,
                 const std::function<void()>& party2);

struct RunOptions {
  std::uint64_t seed = 1;
  DealCounts counts;
  std::optional<TamperSpec> tamper;
};

struct LocalProtocolRun {
  ProtocolOutput server;  // party 1
  ProtocolOutput client;  // party 2
};

LocalProtocolRun run_local_iris(const FieldParams& params,
                                const IrisConfig& cfg,
                                const IrisTemplate& client_tpl,
                                const IrisTemplate& server_tpl,
                                const RunOptions& opt);
LocalProtocolRun run_local_face(const FieldParams& params,
                                const FaceConfig& cfg,
                                const FaceTemplate& client_tpl,
                                const FaceTemplate& server_tpl,
                                const RunOptions& opt);
LocalProtocolRun run_local_fusion(const FieldParams& params,
                                  const FusionConfig& cfg,
                                  const FusionInput& client_in,
                                  const FusionInput& server_in,
                                  const RunOptions& opt);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exhaustive comparison sweep at p = 251: every x, y below p/2, each pair
/// exercised against r_samples fresh dealer draws of the shared random bit
/// value. Also confirms that the complementary sign convention would fail.
CheckResult check_comparison_exhaustive(std::uint64_t seed,
                                        std::size_t r_samples);

/// Random end-to-end instances per protocol at desk scale; the opened MPC
/// decision must equal the plaintext-oracle decision computed with identical
/// quantized parameters, for every instance.
CheckResult check_oracle_equivalence(std::uint64_t prime,
                                     std::size_t instances,
                                     std::uint64_t seed);

/// Runs the reference (N, k) grid at the default 46-bit prime and checks
/// consumption, per-party tuple-open payload, and round counts against the
/// closed forms. Returns one result per criterion, in that order.
struct FormulaChecks {
  CheckResult consumption;
  CheckResult bandwidth;
  CheckResult rounds;
};
FormulaChecks check_cost_formulas(std::uint64_t seed, bool heavy);

/// Fault-injection sweep over the wire positions (epsilon, delta,
/// square-epsilon, s-opening, sigma-reveal): every trial must abort at the
/// victim without emitting a decision bit.
CheckResult check_tamper_abort(std::size_t trials, std::uint64_t seed);

/// Loose wall-clock bounds for the online phase plus the multimodal-vs-iris
/// overhead ratio.
CheckResult check_performance(std::uint64_t seed);

/// Synthetic-data sanity: genuine (5% flips) and impostor iris populations
/// must separate at t = 0.35 with empirical error under 1%.
CheckResult check_synthetic_separation(std::uint64_t seed);

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 1;
};

/// The full verification battery; prints one status line per check.
std::vector<CheckResult> run_verification(const VerifyOptions& options,
                                          std::ostream& log);

}  // namespace biompc
