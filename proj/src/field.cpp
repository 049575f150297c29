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

#include "biompc/field.hpp"

#include <bit>

namespace biompc {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) {
      acc = mulmod(acc, base, m);
    }
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.modulus != b.modulus) {
    throw MismatchError("field elements from different moduli");
  }
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This witness set is exact for every n < 3.3 * 10^24, so for all u64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldParams::FieldParams(std::uint64_t prime) : p_(prime) {
  if (prime >= (1ULL << 63)) {
    throw std::invalid_argument("modulus must fit in 63 bits");
  }
  if (!is_prime_u64(prime)) {
    throw std::invalid_argument("modulus is not prime");
  }
  ell_ = static_cast<unsigned>(std::bit_width(prime));
}

FieldElement fe(const FieldParams& params, std::uint64_t v) {
  return FieldElement{v % params.p(), params.p()};
}

FieldElement fe_add(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  std::uint64_t s = a.value + b.value;  // < 2^64: both operands < 2^63
  if (s >= a.modulus) s -= a.modulus;
  return {s, a.modulus};
}

FieldElement fe_sub(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  std::uint64_t s = a.value >= b.value ? a.value - b.value
                                       : a.value + a.modulus - b.value;
  return {s, a.modulus};
}

FieldElement fe_mul(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return {mulmod(a.value, b.value, a.modulus), a.modulus};
}

FieldElement fe_neg(FieldElement a) {
  return {a.value == 0 ? 0 : a.modulus - a.value, a.modulus};
}

FieldElement fe_rand(const FieldParams& params, SecureRng& rng) {
  const unsigned ell = params.ell();
  const std::uint64_t mask =
      ell >= 64 ? ~0ULL : ((1ULL << ell) - 1);
  for (;;) {
    std::uint64_t v = rng.next_u64() & mask;
    if (v < params.p()) {
      return {v, params.p()};
    }
  }
}

std::vector<std::uint8_t> fe_bits(const FieldParams& params, FieldElement a) {
  if (a.modulus != params.p()) {
    throw MismatchError("fe_bits: element does not belong to params");
  }
  std::vector<std::uint8_t> bits(params.ell());
  for (unsigned i = 0; i < params.ell(); ++i) {
    bits[i] = static_cast<std::uint8_t>((a.value >> i) & 1);
  }
  return bits;
}

FieldElement fe_from_bits(const FieldParams& params,
                          std::span<const std::uint8_t> bits) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) {
      throw std::invalid_argument("fe_from_bits: entries must be 0 or 1");
    }
    if (bits[i] && i < 64) {
      v |= 1ULL << i;
    }
  }
  return fe(params, v);
}

}  // namespace biompc
