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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "biompc/synth.hpp"
#include "biompc/template_io.hpp"

using namespace biompc;

TEST_CASE("iris templates round trip bit-exactly") {
  SecureRng rng(1);
  IrisTemplate tpl = random_iris(rng, 64, 0.2, 4, 8);
  std::string text = format_iris_template(tpl);
  IrisTemplate back = parse_iris_template(text);
  CHECK(back.bits == tpl.bits);
  CHECK(back.mask == tpl.mask);
  CHECK(back.radial == tpl.radial);
  CHECK(back.angular == tpl.angular);
  CHECK(format_iris_template(back) == text);
}

TEST_CASE("face templates round trip bit-exactly") {
  SecureRng rng(2);
  FaceTemplate tpl = random_face(rng, 5, 16);
  std::string text = format_face_template(tpl);
  FaceTemplate back = parse_face_template(text);
  CHECK(back.features == tpl.features);
  CHECK(back.feature_bits == tpl.feature_bits);
  CHECK(format_face_template(back) == text);
}

TEST_CASE("template files round trip through disk") {
  auto dir = std::filesystem::temp_directory_path();
  SecureRng rng(3);
  IrisTemplate iris = random_iris(rng, 32, 0.1, 2, 8);
  FaceTemplate face = random_face(rng, 3, 8);

  auto ipath = dir / "biompc_test.iris";
  auto fpath = dir / "biompc_test.face";
  write_iris_template(iris, ipath);
  write_face_template(face, fpath);
  CHECK(read_iris_template(ipath).bits == iris.bits);
  CHECK(read_face_template(fpath).features == face.features);
  std::filesystem::remove(ipath);
  std::filesystem::remove(fpath);
}

TEST_CASE("iris parse errors") {
  CHECK_THROWS_AS(parse_iris_template("face k=1 bf=8\n3\n"), FormatError);
  CHECK_THROWS_AS(parse_iris_template("iris N=4 r=0 theta=0\n0101\n00\n"),
                  FormatError);
  CHECK_THROWS_AS(parse_iris_template("iris N=4 r=0 theta=0\n0121\n0000\n"),
                  FormatError);
  CHECK_THROWS_AS(parse_iris_template("iris N=4 r=0 theta=0\n0101\n"),
                  FormatError);
  CHECK_THROWS_AS(
      parse_iris_template("iris N=4 r=0 theta=0\n0101\n0000\nleftover\n"),
      FormatError);
  CHECK_THROWS_AS(parse_iris_template("iris r=0 theta=0\n01\n00\n"),
                  FormatError);
  // mismatched N = 2 r theta
  CHECK_THROWS_AS(parse_iris_template("iris N=4 r=3 theta=9\n0101\n0000\n"),
                  std::invalid_argument);
}

TEST_CASE("face parse errors") {
  CHECK_THROWS_AS(parse_face_template("face k=2 bf=8\n1\n"), FormatError);
  CHECK_THROWS_AS(parse_face_template("face k=2 bf=8\n1 x\n"), FormatError);
  CHECK_THROWS_AS(parse_face_template("face k=2 bf=8\n1 2 3\n"), FormatError);
  CHECK_THROWS_AS(parse_face_template("face k=2 bf=8\n1  2\n"), FormatError);
  // feature exceeding the declared width
  CHECK_THROWS_AS(parse_face_template("face k=1 bf=4\n16\n"),
                  std::invalid_argument);
}

TEST_CASE("format errors carry the byte offset") {
  try {
    parse_iris_template("iris N=4 r=0 theta=0\n0121\n0000\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.offset == 23);  // the offending '2'
  }
}
