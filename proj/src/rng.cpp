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

#include "biompc/rng.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace biompc {

namespace {

void ensure_sodium() {
  if (sodium_init() < 0) {
    throw std::runtime_error("libsodium initialization failed");
  }
}

std::array<std::uint8_t, 32> key_from_seed(const char* domain,
                                           std::uint64_t seed) {
  std::vector<std::uint8_t> buf(std::strlen(domain) + 8);
  std::memcpy(buf.data(), domain, std::strlen(domain));
  for (int i = 0; i < 8; ++i) {
    buf[std::strlen(domain) + i] =
        static_cast<std::uint8_t>(seed >> (8 * i));
  }
  return sha256(buf);
}

}  // namespace

SecureRng::SecureRng() {
  ensure_sodium();
  randombytes_buf(key_.data(), key_.size());
}

SecureRng::SecureRng(std::uint64_t seed)
    : SecureRng(key_from_seed("biompc.rng.v1", seed)) {}

SecureRng::SecureRng(const std::array<std::uint8_t, 32>& key) : key_(key) {
  ensure_sodium();
}

void SecureRng::refill() {
  std::uint8_t nonce[crypto_stream_chacha20_NONCEBYTES] = {0};
  for (int i = 0; i < 8; ++i) {
    nonce[i] = static_cast<std::uint8_t>(block_counter_ >> (8 * i));
  }
  crypto_stream_chacha20(buf_.data(), buf_.size(), nonce, key_.data());
  ++block_counter_;
  pos_ = 0;
}

std::uint64_t SecureRng::next_u64() {
  if (pos_ + 8 > buf_.size()) {
    refill();
  }
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) {
    out |= static_cast<std::uint64_t>(buf_[pos_ + i]) << (8 * i);
  }
  pos_ += 8;
  return out;
}

void SecureRng::fill_bytes(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pos_ >= buf_.size()) {
      refill();
    }
    b = buf_[pos_++];
  }
}

std::uint64_t SecureRng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("SecureRng::below: bound must be positive");
  }
  if ((bound & (bound - 1)) == 0) {
    return next_u64() & (bound - 1);
  }
  // Reject draws above the largest multiple of bound to keep uniformity.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) {
      return v % bound;
    }
  }
}

SecureRng SecureRng::fork(std::uint64_t label) {
  std::array<std::uint8_t, 40> buf{};
  std::memcpy(buf.data(), key_.data(), 32);
  for (int i = 0; i < 8; ++i) {
    buf[32 + i] = static_cast<std::uint8_t>(label >> (8 * i));
  }
  return SecureRng(sha256(buf));
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  ensure_sodium();
  std::array<std::uint8_t, 32> out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

Sha256::Sha256() {
  ensure_sodium();
  static_assert(sizeof(crypto_hash_sha256_state) <= sizeof(state_));
  crypto_hash_sha256_init(
      reinterpret_cast<crypto_hash_sha256_state*>(state_.data()));
}

void Sha256::update(std::span<const std::uint8_t> data) {
  crypto_hash_sha256_update(
      reinterpret_cast<crypto_hash_sha256_state*>(state_.data()), data.data(),
      data.size());
}

void Sha256::update_u64(std::uint64_t word) {
  std::uint8_t bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<std::uint8_t>(word >> (8 * i));
  }
  update(bytes);
}

std::array<std::uint8_t, 32> Sha256::finish() {
  std::array<std::uint8_t, 32> out{};
  crypto_hash_sha256_final(
      reinterpret_cast<crypto_hash_sha256_state*>(state_.data()), out.data());
  return out;
}

std::uint64_t fnv1a64(std::uint64_t h, std::span<const std::uint8_t> data) {
  for (std::uint8_t b : data) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64_u64(std::uint64_t h, std::uint64_t word) {
  std::uint8_t bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<std::uint8_t>(word >> (8 * i));
  }
  return fnv1a64(h, bytes);
}

}  // namespace biompc
