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

#include "biompc/biometrics.hpp"

#include <algorithm>
#include <numeric>

namespace biompc {

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  std::uint64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

Rational parse_decimal(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("empty decimal literal");
  }
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) {
        throw std::invalid_argument("malformed decimal '" + text + "'");
      }
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed decimal '" + text + "'");
    }
    seen_digit = true;
    if (num > (UINT64_MAX - 9) / 10 || (seen_point && den > UINT64_MAX / 10)) {
      throw std::invalid_argument("decimal '" + text + "' out of range");
    }
    num = num * 10 + static_cast<std::uint64_t>(c - '0');
    if (seen_point) {
      den *= 10;
    }
  }
  if (!seen_digit) {
    throw std::invalid_argument("malformed decimal '" + text + "'");
  }
  return make_rational(num, den);
}

std::uint64_t round_half_even(std::uint64_t num, std::uint64_t den) {
  if (den == 0) {
    throw std::invalid_argument("round_half_even: zero denominator");
  }
  std::uint64_t q = num / den;
  std::uint64_t r = num % den;
  // Compare the remainder against half the denominator without overflow.
  if (r > den - r || (r == den - r && (q & 1) != 0)) {
    ++q;
  }
  return q;
}

void validate_iris(const IrisTemplate& tpl) {
  if (tpl.bits.empty()) {
    throw std::invalid_argument("iris template is empty");
  }
  if (tpl.bits.size() != tpl.mask.size()) {
    throw std::invalid_argument("iris template and mask lengths differ");
  }
  if (tpl.radial != 0 && tpl.angular != 0 &&
      tpl.bits.size() != 2ULL * tpl.radial * tpl.angular) {
    throw std::invalid_argument(
        "iris template length does not match 2 * radial * angular");
  }
  for (std::size_t i = 0; i < tpl.bits.size(); ++i) {
    if (tpl.bits[i] > 1 || tpl.mask[i] > 1) {
      throw std::invalid_argument("iris template entries must be 0 or 1");
    }
  }
  // A fully masked template guarantees a zero denominator; the protocol
  // cannot detect that condition once the bits are shared.
  if (std::all_of(tpl.mask.begin(), tpl.mask.end(),
                  [](std::uint8_t m) { return m == 1; })) {
    throw std::invalid_argument("iris template is fully masked");
  }
}

void validate_face(const FaceTemplate& tpl) {
  if (tpl.k() < 1 || tpl.k() > kMaxFaceFeatures) {
    throw std::invalid_argument("face template must have 1..10 features");
  }
  if (tpl.feature_bits < 1 || tpl.feature_bits > 32) {
    throw std::invalid_argument("face feature width must be 1..32 bits");
  }
  const std::uint64_t limit = 1ULL << tpl.feature_bits;
  for (std::uint64_t f : tpl.features) {
    if (f >= limit) {
      throw std::invalid_argument("face feature exceeds declared width");
    }
  }
}

std::pair<std::uint64_t, std::uint64_t> threshold_fraction(const Rational& t) {
  if (t.num == 0 || t.num >= t.den) {
    throw std::invalid_argument("threshold must lie in (0, 1)");
  }
  for (std::uint64_t d : {10ULL, 20ULL, 100ULL}) {
    if ((t.num * d) % t.den == 0) {
      return {t.num * d / t.den, d};
    }
  }
  throw std::invalid_argument(
      "threshold is not representable over denominators {10, 20, 100}");
}

FusionParams quantize_fusion(const Rational& alpha, const Rational& t,
                             bool strict_t) {
  if (alpha.num > alpha.den) {
    throw std::invalid_argument("fusion weight alpha must lie in [0, 1]");
  }
  if (t.num == 0 || t.num >= t.den) {
    throw std::invalid_argument("fusion threshold must lie in (0, 1)");
  }

  FusionParams out;
  out.strict_t = strict_t;
  out.alpha_q =
      static_cast<std::uint32_t>(round_half_even(10 * alpha.num, alpha.den));
  out.beta_q = 10 - out.alpha_q;
  out.lossy = (10 * alpha.num) % alpha.den != 0;

  if (strict_t) {
    // The [0,10] grid for the threshold as well; 0.35 becomes 4/10.
    std::uint64_t t_q = round_half_even(10 * t.num, t.den);
    out.lossy = out.lossy || (10 * t.num) % t.den != 0;
    out.t_num = t_q;
    out.t_den = 10;
  } else {
    auto [t_num, t_den] = threshold_fraction(t);
    out.t_num = t_num;
    out.t_den = t_den;
  }

  // Fold the threshold denominator into both sides of the inequality and
  // drop the common factor.
  std::uint64_t lhs = out.t_den;
  std::uint64_t rhs = 10 * out.t_num;
  std::uint64_t g = std::gcd(lhs, rhs);
  out.lhs_scale = lhs / g;
  out.rhs_scale = rhs / g;
  return out;
}

}  // namespace biompc
