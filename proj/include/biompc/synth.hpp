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
#include "biompc/rng.hpp"

namespace biompc {

// Synthetic template generator. Genuine pairs share a base code perturbed by
// a bit-flip rate; impostor pairs are sampled independently, so their
// Hamming distance concentrates around 1/2.

bool bernoulli(SecureRng& rng, double rate);

IrisTemplate random_iris(SecureRng& rng, std::size_t n, double mask_rate,
                         std::uint32_t radial = 0, std::uint32_t angular = 0);

/// A genuine mate of base: same code with bits flipped at flip_rate and a
/// freshly drawn mask.
IrisTemplate genuine_iris(const IrisTemplate& base, SecureRng& rng,
                          double flip_rate, double mask_rate);

FaceTemplate random_face(SecureRng& rng, std::size_t k, unsigned feature_bits);

/// A genuine mate of base: each feature moved by at most radius, clamped to
/// the declared width.
FaceTemplate genuine_face(const FaceTemplate& base, SecureRng& rng,
                          std::uint64_t radius);

}  // namespace biompc
