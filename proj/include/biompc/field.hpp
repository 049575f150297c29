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

#include "biompc/errors.hpp"
#include "biompc/rng.hpp"

namespace biompc {

/// The 46-bit prime used by the full-scale protocol runs.
inline constexpr std::uint64_t kDefaultPrime = 67280421310721ULL;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Prime modulus p together with its bit length ell (smallest ell with
/// p < 2^ell). ell is always derived from p, never user-supplied.
class FieldParams {
 public:
  explicit FieldParams(std::uint64_t prime);

  std::uint64_t p() const { return p_; }
  unsigned ell() const { return ell_; }

  friend bool operator==(const FieldParams& a, const FieldParams& b) {
    return a.p_ == b.p_;
  }

 private:
  std::uint64_t p_;
  unsigned ell_;
};

/// An element of F_p. Carries its modulus so that cross-field mixing is a
/// hard error instead of silent corruption. Always reduced: 0 <= value < p.
struct FieldElement {
  std::uint64_t value = 0;
  std::uint64_t modulus = 0;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// Builds an element, reducing v mod p.
FieldElement fe(const FieldParams& params, std::uint64_t v);

FieldElement fe_add(FieldElement a, FieldElement b);
FieldElement fe_sub(FieldElement a, FieldElement b);
FieldElement fe_mul(FieldElement a, FieldElement b);
FieldElement fe_neg(FieldElement a);

inline FieldElement operator+(FieldElement a, FieldElement b) { return fe_add(a, b); }
inline FieldElement operator-(FieldElement a, FieldElement b) { return fe_sub(a, b); }
inline FieldElement operator*(FieldElement a, FieldElement b) { return fe_mul(a, b); }

/// Uniform element of [0, p) by rejection sampling on ell-bit draws.
FieldElement fe_rand(const FieldParams& params, SecureRng& rng);

/// The ell bits of a.value, least significant first.
std::vector<std::uint8_t> fe_bits(const FieldParams& params, FieldElement a);

/// Inverse of fe_bits; bits beyond the first 64 must be zero.
FieldElement fe_from_bits(const FieldParams& params,
                          std::span<const std::uint8_t> bits);

}  // namespace biompc
