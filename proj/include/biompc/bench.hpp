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

#include <iosfwd>
#include <string>
#include <vector>

#include "biompc/dealer.hpp"

namespace biompc {

/// Closed-form per-party online costs as a function of (N, k, ell):
///
///               triples      squares  transmissions  tuple-open elements
///   iris        3N+ell+1     0        2*ell+7        6N+2*ell+2
///   face        ell          k        2*ell+1        2*ell+k
///   multimodal  3N+ell+6     k        2*ell+19       6N+2*ell+12+k
///
/// Payload size in bits is elements * ell (each element carries ell
/// significant bits).
struct CostFormulas {
  std::uint64_t triples = 0;
  std::uint64_t squares = 0;
  std::uint64_t transmissions = 0;
  std::uint64_t tuple_elements = 0;
};

CostFormulas expected_costs(Protocol protocol, std::size_t n_bits,
                            std::size_t k, unsigned ell);

/// elements * ell bits expressed in KiB.
double payload_kib(std::uint64_t elements, unsigned ell);

/// Reference bandwidth figures (KB) for the four standard configurations,
/// tabulated with ell = 45 even though the 46-bit default prime needs
/// ell = 46; reports must flag that discrepancy.
struct ReferenceBandwidth {
  std::size_t n_bits;
  std::size_t k;
  double iris_kb;
  double multimodal_kb;
};

const std::vector<ReferenceBandwidth>& reference_bandwidth_table();
inline constexpr unsigned kReferenceBandwidthEll = 45;

/// Ordered key/value record; rendering is "key: value" lines with a blank
/// line between records, stable field order, deterministic for a fixed seed
/// (timing fields excluded from that guarantee).
class ReportRecord {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, std::uint64_t value);
  void add(const std::string& key, std::int64_t value);
  void add(const std::string& key, double value);

  const std::vector<std::pair<std::string, std::string>>& fields() const {
    return fields_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

void write_report(std::ostream& os, const std::vector<ReportRecord>& records);

}  // namespace biompc
