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
#include <string>
#include <vector>

#include "biompc/errors.hpp"

namespace biompc {

/// Exact non-negative rational, kept reduced.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(std::uint64_t num, std::uint64_t den);

/// Parses a non-negative decimal literal like "0.35" exactly (35/100,
/// reduced). Throws std::invalid_argument on malformed input.
Rational parse_decimal(const std::string& text);

/// round(num/den) with ties going to the even integer.
std::uint64_t round_half_even(std::uint64_t num, std::uint64_t den);

/// A threshold t in (0, 1) as an exact fraction over the smallest
/// denominator in {10, 20, 100}; throws when none fits.
std::pair<std::uint64_t, std::uint64_t> threshold_fraction(const Rational& t);

/// Binary iris code with its noise mask. A mask bit of 1 marks a feature bit
/// as noise-affected and excluded from matching. When the radial and angular
/// resolutions are recorded, length() == 2 * radial * angular.
struct IrisTemplate {
  std::uint32_t radial = 0;
  std::uint32_t angular = 0;
  std::vector<std::uint8_t> bits;
  std::vector<std::uint8_t> mask;

  std::size_t length() const { return bits.size(); }
};

/// Checks lengths, binary entries, the recorded resolutions, and that the
/// template's own mask leaves at least one usable bit.
void validate_iris(const IrisTemplate& tpl);

/// Integer face feature vector (projection onto an eigenface basis), each
/// feature within feature_bits.
struct FaceTemplate {
  std::uint32_t feature_bits = 8;
  std::vector<std::uint64_t> features;

  std::size_t k() const { return features.size(); }
};

inline constexpr std::size_t kMaxFaceFeatures = 10;

void validate_face(const FaceTemplate& tpl);

/// Quantized score-fusion parameters. Weights live on the integer scale
/// [0, 10] with beta_q = 10 - alpha_q. The threshold is carried exactly as
/// t_num/t_den; both sides of the fused inequality are multiplied by the
/// denominator, reduced by their common factor:
///
///   lhs_scale * (alpha_q * num * R + beta_q * SED * den)
///       < rhs_scale * den * R
struct FusionParams {
  std::uint32_t alpha_q = 0;
  std::uint32_t beta_q = 10;
  std::uint64_t t_num = 0;
  std::uint64_t t_den = 1;
  bool strict_t = false;     // threshold forced onto the [0,10] grid too
  bool lossy = false;        // some rounding changed alpha or t
  std::uint64_t lhs_scale = 1;
  std::uint64_t rhs_scale = 0;
};

/// Quantizes alpha to round(10*alpha) (ties to even) and beta to its
/// complement. By default the threshold stays exact, with denominator chosen
/// as the smallest of {10, 20, 100} that makes it integral; with strict_t
/// the threshold is rounded to round(10*t)/10 as well and flagged lossy when
/// that loses precision.
FusionParams quantize_fusion(const Rational& alpha, const Rational& t,
                             bool strict_t = false);

}  // namespace biompc
