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

#include "biompc/biometrics.hpp"
#include "biompc/engine.hpp"
#include "biompc/oracles.hpp"

namespace biompc {

// Convention: party 1 is the server (enrolled template, thresholds, face
// range), party 2 is the client (query templates). Client inputs are shared
// first. Only the final decision bit is ever opened.

enum class Outcome : std::uint8_t { Accept = 0, Reject = 1, Abort = 2 };

const char* outcome_name(Outcome o);

struct ProtocolOutput {
  Outcome outcome = Outcome::Abort;
  int decision = -1;  // 0/1 once opened, -1 on abort
  EngineStats stats;  // totals at protocol end
  std::uint64_t input_rounds = 0;
  std::uint64_t body_rounds = 0;  // distance + comparison flushes, the unit
                                  // compared against the closed-form counts
  std::uint64_t output_rounds = 0;
  double online_seconds = 0.0;
};

/// Iris matching: accept iff num < t * den for threshold t = t_num/t_den.
/// t_den is public; the numerator is a server-private shared input unless
/// threshold_public is set (which saves the one den*t multiplication).
struct IrisConfig {
  std::size_t n_bits = 0;
  std::uint64_t t_num = 0;  // used directly when threshold_public
  std::uint64_t t_den = 1;
  bool threshold_public = false;
};

ProtocolOutput run_iris(PartySession& session, const IrisConfig& cfg,
                        const IrisTemplate& local_template);

/// Face matching: accept iff SED < threshold_sq. The squared threshold is
/// public.
struct FaceConfig {
  std::size_t k = 0;
  unsigned feature_bits = 8;
  std::uint64_t threshold_sq = 0;
};

ProtocolOutput run_face(PartySession& session, const FaceConfig& cfg,
                        const FaceTemplate& local_template);

/// Score-level fusion of the two modalities, division-free. The face range R
/// is a server-private shared input unless range_public is set.
struct FusionConfig {
  std::size_t n_bits = 0;
  std::size_t k = 0;
  unsigned feature_bits = 8;
  FusionParams fusion;
  std::uint64_t face_range_max = 0;  // public bound on R for the range check
  bool paper_faithful = false;  // sequence the fusion-stage products instead
                                // of batching them
  bool lean = false;            // drop the reserved filler products
  bool range_public = false;
  std::uint64_t face_range_public = 0;  // R itself when range_public
};

struct FusionInput {
  IrisTemplate iris;
  FaceTemplate face;
  std::uint64_t face_range = 0;  // server-side R when it is private
};

ProtocolOutput run_fusion(PartySession& session, const FusionConfig& cfg,
                          const FusionInput& local_input);

/// Range-fit checks: every value entering a comparison must stay below p/2.
/// Throw std::invalid_argument when the declared parameter space does not
/// fit the field.
void check_iris_range(const FieldParams& field, const IrisConfig& cfg);
void check_face_range(const FieldParams& field, const FaceConfig& cfg);
void check_fusion_range(const FieldParams& field, const FusionConfig& cfg);

}  // namespace biompc
