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

#include "biompc/biometrics.hpp"

namespace biompc {

// Plaintext reference path. Everything here is exact integer/rational
// arithmetic, independent of the share-based pipeline it cross-checks.

/// Weighted Hamming distance as the unreduced fraction num/den:
///   num = #unmasked positions where the codes differ
///   den = #positions not masked by either template
struct IrisScore {
  std::uint64_t num = 0;
  std::uint64_t den = 0;
};

/// Throws std::invalid_argument on length mismatch or a fully masked pair
/// (den = 0, where the distance is undefined).
IrisScore oracle_iris_hd(const IrisTemplate& a, const IrisTemplate& b);

/// Squared Euclidean distance between feature vectors of equal length.
std::uint64_t oracle_face_sed(const FaceTemplate& a, const FaceTemplate& b);

/// num/den < t_num/t_den, exactly.
bool oracle_iris_accept(const IrisScore& score, std::uint64_t t_num,
                        std::uint64_t t_den);

/// sed < threshold^2 (threshold_sq given already squared).
bool oracle_face_accept(std::uint64_t sed, std::uint64_t threshold_sq);

/// The fused decision with the given quantized parameters and face range R:
///   lhs_scale * (alpha_q*num*R + beta_q*sed*den) < rhs_scale * den * R
/// evaluated in 128-bit integers.
bool oracle_fusion_accept(const IrisScore& iris, std::uint64_t sed,
                          const FusionParams& params, std::uint64_t range);

}  // namespace biompc
