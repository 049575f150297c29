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

#include "biompc/synth.hpp"

#include <cmath>

namespace biompc {

bool bernoulli(SecureRng& rng, double rate) {
  if (rate <= 0.0) return false;
  if (rate >= 1.0) return true;
  return static_cast<double>(rng.next_u64()) <
         rate * static_cast<double>(UINT64_MAX);
}

IrisTemplate random_iris(SecureRng& rng, std::size_t n, double mask_rate,
                         std::uint32_t radial, std::uint32_t angular) {
  IrisTemplate tpl;
  tpl.radial = radial;
  tpl.angular = angular;
  tpl.bits.resize(n);
  tpl.mask.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    tpl.bits[i] = static_cast<std::uint8_t>(rng.next_u64() & 1);
    tpl.mask[i] = bernoulli(rng, mask_rate) ? 1 : 0;
  }
  // Keep at least one usable bit so the denominator cannot vanish.
  if (n > 0) {
    tpl.mask[rng.below(n)] = 0;
  }
  return tpl;
}

IrisTemplate genuine_iris(const IrisTemplate& base, SecureRng& rng,
                          double flip_rate, double mask_rate) {
  IrisTemplate tpl = base;
  for (std::size_t i = 0; i < tpl.bits.size(); ++i) {
    if (bernoulli(rng, flip_rate)) {
      tpl.bits[i] ^= 1;
    }
    tpl.mask[i] = bernoulli(rng, mask_rate) ? 1 : 0;
  }
  if (!tpl.mask.empty()) {
    tpl.mask[rng.below(tpl.mask.size())] = 0;
  }
  return tpl;
}

FaceTemplate random_face(SecureRng& rng, std::size_t k, unsigned feature_bits) {
  FaceTemplate tpl;
  tpl.feature_bits = feature_bits;
  tpl.features.resize(k);
  const std::uint64_t limit = 1ULL << feature_bits;
  for (auto& f : tpl.features) {
    f = rng.below(limit);
  }
  return tpl;
}

FaceTemplate genuine_face(const FaceTemplate& base, SecureRng& rng,
                          std::uint64_t radius) {
  FaceTemplate tpl = base;
  const std::uint64_t limit = (1ULL << tpl.feature_bits) - 1;
  for (auto& f : tpl.features) {
    std::uint64_t offset = rng.below(2 * radius + 1);
    if (offset <= radius) {
      f = f + offset > limit ? limit : f + offset;
    } else {
      std::uint64_t down = offset - radius;
      f = f >= down ? f - down : 0;
    }
  }
  return tpl;
}

}  // namespace biompc
