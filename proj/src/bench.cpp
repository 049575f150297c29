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

#include "biompc/bench.hpp"

#include <cstdio>
#include <ostream>

namespace biompc {

CostFormulas expected_costs(Protocol protocol, std::size_t n_bits,
                            std::size_t k, unsigned ell) {
  CostFormulas c;
  switch (protocol) {
    case Protocol::Iris:
      c.triples = 3 * n_bits + ell + 1;
      c.squares = 0;
      c.transmissions = 2ULL * ell + 7;
      c.tuple_elements = 6 * n_bits + 2ULL * ell + 2;
      break;
    case Protocol::Face:
      c.triples = ell;
      c.squares = k;
      c.transmissions = 2ULL * ell + 1;
      c.tuple_elements = 2ULL * ell + k;
      break;
    case Protocol::Multimodal:
      c.triples = 3 * n_bits + ell + 6;
      c.squares = k;
      c.transmissions = 2ULL * ell + 19;
      c.tuple_elements = 6 * n_bits + 2ULL * ell + 12 + k;
      break;
  }
  return c;
}

double payload_kib(std::uint64_t elements, unsigned ell) {
  return static_cast<double>(elements) * ell / 8.0 / 1024.0;
}

const std::vector<ReferenceBandwidth>& reference_bandwidth_table() {
  static const std::vector<ReferenceBandwidth> table = {
      {1600, 1, 53.24, 53.30},
      {3600, 3, 119.16, 119.23},
      {5760, 2, 190.35, 190.42},
      {6400, 2, 211.44, 211.51},
  };
  return table;
}

void ReportRecord::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, value);
}

void ReportRecord::add(const std::string& key, std::uint64_t value) {
  fields_.emplace_back(key, std::to_string(value));
}

void ReportRecord::add(const std::string& key, std::int64_t value) {
  fields_.emplace_back(key, std::to_string(value));
}

void ReportRecord::add(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  fields_.emplace_back(key, buf);
}

void write_report(std::ostream& os, const std::vector<ReportRecord>& records) {
  bool first = true;
  for (const ReportRecord& rec : records) {
    if (!first) {
      os << "\n";
    }
    first = false;
    for (const auto& [key, value] : rec.fields()) {
      os << key << ": " << value << "\n";
    }
  }
}

}  // namespace biompc
