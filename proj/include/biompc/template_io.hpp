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

#include <filesystem>
#include <iosfwd>

#include "biompc/biometrics.hpp"

namespace biompc {

// Self-describing text templates, bit-exact on round trip:
//
//   iris N=<n> r=<radial> theta=<angular>
//   <n characters of 0/1: feature bits>
//   <n characters of 0/1: noise mask>
//
//   face k=<k> bf=<feature bits>
//   <k decimal integers separated by single spaces>

void write_iris_template(const IrisTemplate& tpl,
                         const std::filesystem::path& path);
void write_face_template(const FaceTemplate& tpl,
                         const std::filesystem::path& path);

IrisTemplate read_iris_template(const std::filesystem::path& path);
FaceTemplate read_face_template(const std::filesystem::path& path);

std::string format_iris_template(const IrisTemplate& tpl);
std::string format_face_template(const FaceTemplate& tpl);
IrisTemplate parse_iris_template(const std::string& text);
FaceTemplate parse_face_template(const std::string& text);

}  // namespace biompc
