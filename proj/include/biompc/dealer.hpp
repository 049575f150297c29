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
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "biompc/shares.hpp"

namespace biompc {

enum class Protocol : std::uint8_t { Iris = 1, Face = 2, Multimodal = 3 };

const char* protocol_name(Protocol p);

/// Correlated randomness for one multiplication: global values satisfy
/// c = a*b. Single-use; the engine enforces in-order consumption.
struct BeaverTriple {
  AuthShare a, b, c;
};

/// Global values satisfy a2 = a^2. Single-use.
struct SquarePair {
  AuthShare a, a2;
};

/// A random field element shared both as an integer and as its ell bits
/// (least significant first). Single-use; one is burned per comparison.
struct RandomBitValue {
  AuthShare r;
  std::vector<AuthShare> bits;
};

/// A random mask for the input phase. The owner's bundle carries the
/// plaintext so the owner can broadcast value - mask.
struct InputMask {
  AuthShare m;
  PartyId owner;
  std::optional<FieldElement> m_plain;
};

struct DealCounts {
  std::uint32_t triples = 0;
  std::uint32_t squares = 0;
  std::uint32_t randbits = 0;
  std::uint32_t masks_per_party = 0;
};

/// One party's preprocessing material. Masks are laid out as all of party 1's
/// followed by all of party 2's.
struct PreprocessingBundle {
  FieldParams params;
  PartyId party;
  MacKeyShare key;
  std::array<std::uint8_t, 16> id{};
  std::vector<BeaverTriple> triples;
  std::vector<SquarePair> squares;
  std::vector<RandomBitValue> randbits;
  std::vector<InputMask> masks;

  /// Session tag derived from the bundle id; stamped on every share.
  std::uint64_t session() const;
};

/// Trusted-dealer stand-in for the offline phase: draws the MAC key, then
/// all correlated material, splitting every value and MAC uniformly.
std::pair<PreprocessingBundle, PreprocessingBundle> deal(
    const FieldParams& params, const DealCounts& counts, SecureRng& rng);

/// Closed-form preprocessing demand for one protocol run:
///   iris        3N+ell+1 triples;            masks 2N+1 per party
///   face        ell triples, k squares;      masks k per party
///   multimodal  3N+ell+6 triples, k squares; masks 2N+k+1 per party
/// plus one random bit value each (one comparison per run).
DealCounts estimate(Protocol protocol, std::size_t n_bits, std::size_t k,
                    unsigned ell);

/// Versioned binary bundle file; see README for the exact layout.
/// Round trips are bit-exact. Read failures name the byte offset.
void write_bundle(const PreprocessingBundle& bundle,
                  const std::filesystem::path& path);
PreprocessingBundle read_bundle(const std::filesystem::path& path);

}  // namespace biompc
