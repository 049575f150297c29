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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace biompc {

/// Deterministic CSPRNG over a ChaCha20 keystream (libsodium).
///
/// The default constructor seeds from OS entropy; the seeded constructors
/// produce a reproducible stream, which the dealer and the CLI rely on for
/// byte-identical reruns.
class SecureRng {
 public:
  SecureRng();                             // OS entropy
  explicit SecureRng(std::uint64_t seed);  // reproducible
  explicit SecureRng(const std::array<std::uint8_t, 32>& key);

  std::uint64_t next_u64();
  void fill_bytes(std::span<std::uint8_t> out);

  /// Uniform in [0, bound), bound >= 1, by rejection sampling.
  std::uint64_t below(std::uint64_t bound);

  /// Independent child stream; same (parent seed, label) gives same child.
  SecureRng fork(std::uint64_t label);

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t block_counter_ = 0;
  std::array<std::uint8_t, 4096> buf_{};
  std::size_t pos_ = sizeof(buf_);
};

/// One-shot SHA-256.
std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

/// Incremental SHA-256, used for transcript hashing.
class Sha256 {
 public:
  Sha256();
  void update(std::span<const std::uint8_t> data);
  void update_u64(std::uint64_t word);  // little-endian
  std::array<std::uint8_t, 32> finish();

 private:
  alignas(16) std::array<std::uint8_t, 208> state_;  // opaque libsodium state
};

/// FNV-1a 64-bit running hash; cheap fingerprint for determinism checks.
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
std::uint64_t fnv1a64(std::uint64_t h, std::span<const std::uint8_t> data);
std::uint64_t fnv1a64_u64(std::uint64_t h, std::uint64_t word);

}  // namespace biompc
