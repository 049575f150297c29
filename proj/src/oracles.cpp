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

#include "biompc/oracles.hpp"

namespace biompc {

namespace {
using u128 = unsigned __int128;
}

IrisScore oracle_iris_hd(const IrisTemplate& a, const IrisTemplate& b) {
  if (a.length() != b.length()) {
    throw std::invalid_argument("iris templates of different lengths");
  }
  IrisScore score;
  for (std::size_t i = 0; i < a.length(); ++i) {
    const bool masked = a.mask[i] == 1 || b.mask[i] == 1;
    if (masked) {
      continue;
    }
    ++score.den;
    if (a.bits[i] != b.bits[i]) {
      ++score.num;
    }
  }
  if (score.den == 0) {
    throw std::invalid_argument(
        "fully masked template pair: Hamming distance undefined");
  }
  return score;
}

std::uint64_t oracle_face_sed(const FaceTemplate& a, const FaceTemplate& b) {
  if (a.k() != b.k()) {
    throw std::invalid_argument("face templates of different lengths");
  }
  std::uint64_t sed = 0;
  for (std::size_t i = 0; i < a.k(); ++i) {
    std::uint64_t d = a.features[i] >= b.features[i]
                          ? a.features[i] - b.features[i]
                          : b.features[i] - a.features[i];
    sed += d * d;
  }
  return sed;
}

bool oracle_iris_accept(const IrisScore& score, std::uint64_t t_num,
                        std::uint64_t t_den) {
  if (t_den == 0) {
    throw std::invalid_argument("iris threshold with zero denominator");
  }
  return static_cast<u128>(score.num) * t_den <
         static_cast<u128>(t_num) * score.den;
}

bool oracle_face_accept(std::uint64_t sed, std::uint64_t threshold_sq) {
  return sed < threshold_sq;
}

bool oracle_fusion_accept(const IrisScore& iris, std::uint64_t sed,
                          const FusionParams& params, std::uint64_t range) {
  if (range == 0) {
    throw std::invalid_argument("fusion face range must be positive");
  }
  u128 lhs = static_cast<u128>(params.lhs_scale) *
             (static_cast<u128>(params.alpha_q) * iris.num * range +
              static_cast<u128>(params.beta_q) * sed * iris.den);
  u128 rhs = static_cast<u128>(params.rhs_scale) * iris.den * range;
  return lhs < rhs;
}

}  // namespace biompc
