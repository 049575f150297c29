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

#include "biompc/dealer.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace biompc {

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Iris:
      return "iris";
    case Protocol::Face:
      return "face";
    case Protocol::Multimodal:
      return "multimodal";
  }
  return "?";
}

std::uint64_t PreprocessingBundle::session() const {
  std::uint64_t tag = 0;
  for (int i = 0; i < 8; ++i) {
    tag |= static_cast<std::uint64_t>(id[i]) << (8 * i);
  }
  return tag;
}

namespace {

/// Splits a value into two uniform additive shares with MAC shares under
/// alpha, stamping both with the session tag.
std::pair<AuthShare, AuthShare> split(const FieldParams& params,
                                      FieldElement value, FieldElement alpha,
                                      std::uint64_t session, SecureRng& rng) {
  FieldElement v1 = fe_rand(params, rng);
  FieldElement v2 = fe_sub(value, v1);
  FieldElement mac = fe_mul(alpha, value);
  FieldElement m1 = fe_rand(params, rng);
  FieldElement m2 = fe_sub(mac, m1);
  return {AuthShare{v1, m1, session}, AuthShare{v2, m2, session}};
}

}  // namespace

std::pair<PreprocessingBundle, PreprocessingBundle> deal(
    const FieldParams& params, const DealCounts& counts, SecureRng& rng) {
  std::array<std::uint8_t, 16> id{};
  rng.fill_bytes(id);

  FieldElement alpha1 = fe_rand(params, rng);
  FieldElement alpha2 = fe_rand(params, rng);
  FieldElement alpha = fe_add(alpha1, alpha2);

  PreprocessingBundle b1{params, PartyId::P1, MacKeyShare{alpha1}, id,
                         {},     {},          {},                  {}};
  PreprocessingBundle b2{params, PartyId::P2, MacKeyShare{alpha2}, id,
                         {},     {},          {},                  {}};
  const std::uint64_t session = b1.session();

  auto deal_share = [&](FieldElement value) {
    return split(params, value, alpha, session, rng);
  };

  b1.triples.reserve(counts.triples);
  b2.triples.reserve(counts.triples);
  for (std::uint32_t i = 0; i < counts.triples; ++i) {
    FieldElement a = fe_rand(params, rng);
    FieldElement b = fe_rand(params, rng);
    auto [a1, a2] = deal_share(a);
    auto [bb1, bb2] = deal_share(b);
    auto [c1, c2] = deal_share(fe_mul(a, b));
    b1.triples.push_back({a1, bb1, c1});
    b2.triples.push_back({a2, bb2, c2});
  }

  b1.squares.reserve(counts.squares);
  b2.squares.reserve(counts.squares);
  for (std::uint32_t i = 0; i < counts.squares; ++i) {
    FieldElement a = fe_rand(params, rng);
    auto [a1, a2] = deal_share(a);
    auto [s1, s2] = deal_share(fe_mul(a, a));
    b1.squares.push_back({a1, s1});
    b2.squares.push_back({a2, s2});
  }

  b1.randbits.reserve(counts.randbits);
  b2.randbits.reserve(counts.randbits);
  for (std::uint32_t i = 0; i < counts.randbits; ++i) {
    // r ranges over all of [0, p); the comparison handles full-range r.
    FieldElement r = fe_rand(params, rng);
    auto [r1, r2] = deal_share(r);
    RandomBitValue v1{r1, {}};
    RandomBitValue v2{r2, {}};
    v1.bits.reserve(params.ell());
    v2.bits.reserve(params.ell());
    for (std::uint8_t bit : fe_bits(params, r)) {
      auto [bit1, bit2] = deal_share(fe(params, bit));
      v1.bits.push_back(bit1);
      v2.bits.push_back(bit2);
    }
    b1.randbits.push_back(std::move(v1));
    b2.randbits.push_back(std::move(v2));
  }

  const std::size_t total_masks = 2 * std::size_t{counts.masks_per_party};
  b1.masks.reserve(total_masks);
  b2.masks.reserve(total_masks);
  for (PartyId owner : {PartyId::P1, PartyId::P2}) {
    for (std::uint32_t i = 0; i < counts.masks_per_party; ++i) {
      FieldElement m = fe_rand(params, rng);
      auto [m1, m2] = deal_share(m);
      b1.masks.push_back(
          {m1, owner,
           owner == PartyId::P1 ? std::optional<FieldElement>(m)
                                : std::nullopt});
      b2.masks.push_back(
          {m2, owner,
           owner == PartyId::P2 ? std::optional<FieldElement>(m)
                                : std::nullopt});
    }
  }

  return {std::move(b1), std::move(b2)};
}

DealCounts estimate(Protocol protocol, std::size_t n_bits, std::size_t k,
                    unsigned ell) {
  DealCounts c;
  c.randbits = 1;
  switch (protocol) {
    case Protocol::Iris:
      if (n_bits < 1) {
        throw std::invalid_argument("iris estimate: N must be >= 1");
      }
      c.triples = static_cast<std::uint32_t>(3 * n_bits + ell + 1);
      c.squares = 0;
      c.masks_per_party = static_cast<std::uint32_t>(2 * n_bits + 1);
      break;
    case Protocol::Face:
      if (k < 1 || k > 10) {
        throw std::invalid_argument("face estimate: k must be in [1, 10]");
      }
      c.triples = ell;
      c.squares = static_cast<std::uint32_t>(k);
      c.masks_per_party = static_cast<std::uint32_t>(k);
      break;
    case Protocol::Multimodal:
      if (n_bits < 1) {
        throw std::invalid_argument("multimodal estimate: N must be >= 1");
      }
      if (k < 1 || k > 10) {
        throw std::invalid_argument(
            "multimodal estimate: k must be in [1, 10]");
      }
      c.triples = static_cast<std::uint32_t>(3 * n_bits + ell + 6);
      c.squares = static_cast<std::uint32_t>(k);
      c.masks_per_party = static_cast<std::uint32_t>(2 * n_bits + k + 1);
      break;
  }
  return c;
}

namespace {

constexpr char kMagic[4] = {'S', 'M', 'B', '1'};
constexpr std::uint16_t kVersion = 1;

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path)
      : out_(path, std::ios::binary) {
    if (!out_) {
      throw Error("cannot open '" + path.string() + "' for writing");
    }
  }

  void bytes(const void* data, std::size_t n) {
    out_.write(static_cast<const char*>(data),
               static_cast<std::streamsize>(n));
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u16(std::uint16_t v) {
    std::uint8_t b[2] = {static_cast<std::uint8_t>(v),
                         static_cast<std::uint8_t>(v >> 8)};
    bytes(b, 2);
  }
  void u32(std::uint32_t v) {
    std::uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    bytes(b, 8);
  }
  void element(const FieldElement& e) { u64(e.value); }
  void share(const AuthShare& s) {
    element(s.val);
    element(s.mac);
  }

  void check() {
    if (!out_) {
      throw Error("bundle write failed");
    }
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path)
      : in_(path, std::ios::binary) {
    if (!in_) {
      throw Error("cannot open '" + path.string() + "' for reading");
    }
  }

  void bytes(void* data, std::size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw FormatError("bundle file truncated", offset_);
    }
    offset_ += n;
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint16_t u16() {
    std::uint8_t b[2];
    bytes(b, 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    std::uint8_t b[4];
    bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint8_t b[8];
    bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  std::size_t offset() const { return offset_; }

  bool at_eof() {
    return in_.peek() == std::ifstream::traits_type::eof();
  }

 private:
  std::ifstream in_;
  std::size_t offset_ = 0;
};

}  // namespace

void write_bundle(const PreprocessingBundle& bundle,
                  const std::filesystem::path& path) {
  Writer w(path);
  w.bytes(kMagic, 4);
  w.u16(kVersion);
  w.u8(static_cast<std::uint8_t>(bundle.party));
  w.u64(bundle.params.p());
  w.u32(static_cast<std::uint32_t>(bundle.triples.size()));
  w.u32(static_cast<std::uint32_t>(bundle.squares.size()));
  w.u32(static_cast<std::uint32_t>(bundle.randbits.size()));
  w.u32(static_cast<std::uint32_t>(bundle.masks.size()));
  w.bytes(bundle.id.data(), bundle.id.size());
  w.u64(bundle.key.alpha.value);

  for (const auto& t : bundle.triples) {
    w.share(t.a);
    w.share(t.b);
    w.share(t.c);
  }
  for (const auto& s : bundle.squares) {
    w.share(s.a);
    w.share(s.a2);
  }
  for (const auto& r : bundle.randbits) {
    w.share(r.r);
    for (const auto& bit : r.bits) {
      w.share(bit);
    }
  }
  for (const auto& m : bundle.masks) {
    w.u8(static_cast<std::uint8_t>(m.owner));
    w.share(m.m);
    if (m.owner == bundle.party) {
      w.element(*m.m_plain);
    }
  }
  w.check();
}

PreprocessingBundle read_bundle(const std::filesystem::path& path) {
  Reader r(path);

  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("bad bundle magic", 0);
  }
  std::uint16_t version = r.u16();
  if (version != kVersion) {
    throw FormatError("unsupported bundle version " + std::to_string(version),
                      4);
  }
  std::uint8_t party_raw = r.u8();
  if (party_raw != 1 && party_raw != 2) {
    throw FormatError("bad party id " + std::to_string(party_raw), 6);
  }
  std::uint64_t p = r.u64();
  FieldParams params = [&] {
    try {
      return FieldParams(p);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("bad modulus: ") + e.what(), 7);
    }
  }();

  std::uint32_t n_triples = r.u32();
  std::uint32_t n_squares = r.u32();
  std::uint32_t n_randbits = r.u32();
  std::uint32_t n_masks = r.u32();

  PreprocessingBundle bundle{params,
                             static_cast<PartyId>(party_raw),
                             MacKeyShare{},
                             {},
                             {},
                             {},
                             {},
                             {}};
  r.bytes(bundle.id.data(), bundle.id.size());
  const std::uint64_t session = bundle.session();

  auto read_element = [&]() -> FieldElement {
    std::size_t at = r.offset();
    std::uint64_t v = r.u64();
    if (v >= p) {
      throw FormatError("element out of range", at);
    }
    return FieldElement{v, p};
  };
  auto read_share = [&]() -> AuthShare {
    FieldElement val = read_element();
    FieldElement mac = read_element();
    return AuthShare{val, mac, session};
  };

  bundle.key.alpha = read_element();

  bundle.triples.reserve(n_triples);
  for (std::uint32_t i = 0; i < n_triples; ++i) {
    AuthShare a = read_share();
    AuthShare b = read_share();
    AuthShare c = read_share();
    bundle.triples.push_back({a, b, c});
  }
  bundle.squares.reserve(n_squares);
  for (std::uint32_t i = 0; i < n_squares; ++i) {
    AuthShare a = read_share();
    AuthShare a2 = read_share();
    bundle.squares.push_back({a, a2});
  }
  bundle.randbits.reserve(n_randbits);
  for (std::uint32_t i = 0; i < n_randbits; ++i) {
    RandomBitValue v{read_share(), {}};
    v.bits.reserve(params.ell());
    for (unsigned b = 0; b < params.ell(); ++b) {
      v.bits.push_back(read_share());
    }
    bundle.randbits.push_back(std::move(v));
  }
  bundle.masks.reserve(n_masks);
  for (std::uint32_t i = 0; i < n_masks; ++i) {
    std::size_t at = r.offset();
    std::uint8_t owner_raw = r.u8();
    if (owner_raw != 1 && owner_raw != 2) {
      throw FormatError("bad mask owner " + std::to_string(owner_raw), at);
    }
    InputMask m{read_share(), static_cast<PartyId>(owner_raw), std::nullopt};
    if (m.owner == bundle.party) {
      m.m_plain = read_element();
    }
    bundle.masks.push_back(m);
  }

  if (!r.at_eof()) {
    throw FormatError("trailing bytes after bundle payload", r.offset());
  }
  return bundle;
}

}  // namespace biompc
