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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biompc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two field elements or shares from incompatible fields/sessions were mixed.
struct MismatchError : Error {
  using Error::Error;
};

/// A serialized artifact (bundle or template file) is malformed.
/// Carries the byte offset at which decoding failed.
struct FormatError : Error {
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

/// The channel failed (peer gone, malformed frame, oversized payload).
struct TransportError : Error {
  using Error::Error;
};

/// A preprocessing pool (triples, squares, random bits, masks) ran dry.
struct ExhaustedError : Error {
  using Error::Error;
};

/// The MAC check failed, a commitment did not verify, or the peer signalled
/// an abort. The session is poisoned; no output may be disclosed.
struct AbortError : Error {
  using Error::Error;
};

}  // namespace biompc
