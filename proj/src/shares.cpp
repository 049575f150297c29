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

#include "biompc/shares.hpp"

namespace biompc {

namespace {

void require_same_session(const AuthShare& x, const AuthShare& y) {
  if (x.session != y.session) {
    throw MismatchError("shares from different sessions");
  }
}

}  // namespace

AuthShare sh_add(const AuthShare& x, const AuthShare& y) {
  require_same_session(x, y);
  return {fe_add(x.val, y.val), fe_add(x.mac, y.mac), x.session};
}

AuthShare sh_sub(const AuthShare& x, const AuthShare& y) {
  require_same_session(x, y);
  return {fe_sub(x.val, y.val), fe_sub(x.mac, y.mac), x.session};
}

AuthShare sh_scale(FieldElement c, const AuthShare& x) {
  return {fe_mul(c, x.val), fe_mul(c, x.mac), x.session};
}

AuthShare sh_add_public(FieldElement c, const AuthShare& x,
                        const MacKeyShare& key, PartyId who) {
  AuthShare out = x;
  if (who == PartyId::P1) {
    out.val = fe_add(out.val, c);
  }
  out.mac = fe_add(out.mac, fe_mul(key.alpha, c));
  return out;
}

std::pair<FieldElement, bool> reconstruct(const AuthShare& x1,
                                          const AuthShare& x2,
                                          FieldElement alpha) {
  require_same_session(x1, x2);
  FieldElement value = fe_add(x1.val, x2.val);
  FieldElement mac = fe_add(x1.mac, x2.mac);
  return {value, mac == fe_mul(alpha, value)};
}

}  // namespace biompc
