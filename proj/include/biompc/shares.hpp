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
#include <utility>

#include "biompc/field.hpp"

namespace biompc {

enum class PartyId : std::uint8_t { P1 = 1, P2 = 2 };

inline PartyId other_party(PartyId p) {
  return p == PartyId::P1 ? PartyId::P2 : PartyId::P1;
}

/// One party's additive share alpha_i of the global MAC key alpha.
/// alpha itself is never reconstructed during the online phase.
struct MacKeyShare {
  FieldElement alpha;
};

/// One party's piece of an authenticated share: an additive share of the
/// value and an additive share of its MAC alpha*value. The session tag ties
/// the share to the MAC key it was authenticated under; mixing shares from
/// different sessions is a hard error.
struct AuthShare {
  FieldElement val;
  FieldElement mac;
  std::uint64_t session = 0;
};

/// A value known identically to both parties.
struct PublicValue {
  enum class Source : std::uint8_t { Constant, Opened };
  FieldElement val;
  Source source = Source::Constant;
};

// The four communication-free linear operations. Party 1 absorbs public
// constants into its value share; MAC shares follow from gamma(a) = alpha*a.

AuthShare sh_add(const AuthShare& x, const AuthShare& y);
AuthShare sh_sub(const AuthShare& x, const AuthShare& y);
AuthShare sh_scale(FieldElement c, const AuthShare& x);

/// c + <x>. Party 1 absorbs the constant into its value share; both parties
/// add alpha_i * c to their MAC share so the global MAC stays alpha*(x+c).
AuthShare sh_add_public(FieldElement c, const AuthShare& x,
                        const MacKeyShare& key, PartyId who);

inline AuthShare operator+(const AuthShare& x, const AuthShare& y) {
  return sh_add(x, y);
}
inline AuthShare operator-(const AuthShare& x, const AuthShare& y) {
  return sh_sub(x, y);
}

/// Dealer/test oracle: recombines the two parties' pieces and verifies the
/// MAC relation against the full key. Never available to a single online
/// party.
std::pair<FieldElement, bool> reconstruct(const AuthShare& x1,
                                          const AuthShare& x2,
                                          FieldElement alpha);

}  // namespace biompc
