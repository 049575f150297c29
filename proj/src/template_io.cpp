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

#include "biompc/template_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace biompc {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open '" + path.string() + "' for writing");
  }
  out << text;
  if (!out) {
    throw Error("write to '" + path.string() + "' failed");
  }
}

/// Cursor over the text, tracking byte offsets for error reporting.
class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  std::string line() {
    if (pos_ >= text_.size()) {
      throw FormatError("unexpected end of template file", pos_);
    }
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) {
      end = text_.size();
    }
    std::string out = text_.substr(pos_, end - pos_);
    line_start_ = pos_;
    pos_ = end < text_.size() ? end + 1 : end;
    return out;
  }

  std::size_t line_offset() const { return line_start_; }
  std::size_t offset() const { return pos_; }

  void expect_end() {
    while (pos_ < text_.size()) {
      if (text_[pos_] != '\n' && text_[pos_] != '\r') {
        throw FormatError("trailing content after template payload", pos_);
      }
      ++pos_;
    }
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
};

std::uint64_t parse_field(const std::string& header, const std::string& key,
                          std::size_t offset) {
  const std::string needle = key + "=";
  std::size_t at = header.find(needle);
  if (at == std::string::npos) {
    throw FormatError("missing '" + key + "=' in template header", offset);
  }
  std::size_t begin = at + needle.size();
  std::size_t end = begin;
  while (end < header.size() && header[end] != ' ') {
    ++end;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(header.data() + begin, header.data() + end,
                                   value);
  if (ec != std::errc() || ptr != header.data() + end) {
    throw FormatError("malformed '" + key + "' value in template header",
                      offset + begin);
  }
  return value;
}

std::vector<std::uint8_t> parse_bitline(const std::string& line,
                                        std::size_t expect,
                                        std::size_t offset) {
  if (line.size() != expect) {
    throw FormatError("bit line has " + std::to_string(line.size()) +
                          " characters, expected " + std::to_string(expect),
                      offset);
  }
  std::vector<std::uint8_t> out(expect);
  for (std::size_t i = 0; i < expect; ++i) {
    if (line[i] != '0' && line[i] != '1') {
      throw FormatError("bit line contains a character other than 0/1",
                        offset + i);
    }
    out[i] = static_cast<std::uint8_t>(line[i] - '0');
  }
  return out;
}

}  // namespace

std::string format_iris_template(const IrisTemplate& tpl) {
  validate_iris(tpl);
  std::string out = "iris N=" + std::to_string(tpl.length()) +
                    " r=" + std::to_string(tpl.radial) +
                    " theta=" + std::to_string(tpl.angular) + "\n";
  for (std::uint8_t b : tpl.bits) {
    out += static_cast<char>('0' + b);
  }
  out += '\n';
  for (std::uint8_t m : tpl.mask) {
    out += static_cast<char>('0' + m);
  }
  out += '\n';
  return out;
}

std::string format_face_template(const FaceTemplate& tpl) {
  validate_face(tpl);
  std::string out = "face k=" + std::to_string(tpl.k()) +
                    " bf=" + std::to_string(tpl.feature_bits) + "\n";
  for (std::size_t i = 0; i < tpl.k(); ++i) {
    if (i != 0) {
      out += ' ';
    }
    out += std::to_string(tpl.features[i]);
  }
  out += '\n';
  return out;
}

IrisTemplate parse_iris_template(const std::string& text) {
  Scanner sc(text);
  std::string header = sc.line();
  if (header.rfind("iris ", 0) != 0) {
    throw FormatError("expected 'iris' template header", sc.line_offset());
  }
  std::size_t n = parse_field(header, "N", sc.line_offset());
  IrisTemplate tpl;
  tpl.radial = static_cast<std::uint32_t>(
      parse_field(header, "r", sc.line_offset()));
  tpl.angular = static_cast<std::uint32_t>(
      parse_field(header, "theta", sc.line_offset()));

  std::string bits_line = sc.line();
  tpl.bits = parse_bitline(bits_line, n, sc.line_offset());
  std::string mask_line = sc.line();
  tpl.mask = parse_bitline(mask_line, n, sc.line_offset());
  sc.expect_end();
  validate_iris(tpl);
  return tpl;
}

FaceTemplate parse_face_template(const std::string& text) {
  Scanner sc(text);
  std::string header = sc.line();
  if (header.rfind("face ", 0) != 0) {
    throw FormatError("expected 'face' template header", sc.line_offset());
  }
  std::size_t k = parse_field(header, "k", sc.line_offset());
  FaceTemplate tpl;
  tpl.feature_bits = static_cast<std::uint32_t>(
      parse_field(header, "bf", sc.line_offset()));

  std::string payload = sc.line();
  const std::size_t payload_offset = sc.line_offset();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i != 0) {
      if (pos >= payload.size() || payload[pos] != ' ') {
        throw FormatError("expected space between face features",
                          payload_offset + pos);
      }
      ++pos;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(payload.data() + pos, payload.data() + payload.size(),
                        value);
    if (ec != std::errc() || ptr == payload.data() + pos) {
      throw FormatError("malformed face feature", payload_offset + pos);
    }
    pos = static_cast<std::size_t>(ptr - payload.data());
    tpl.features.push_back(value);
  }
  if (pos != payload.size()) {
    throw FormatError("trailing characters on face feature line",
                      payload_offset + pos);
  }
  sc.expect_end();
  validate_face(tpl);
  return tpl;
}

void write_iris_template(const IrisTemplate& tpl,
                         const std::filesystem::path& path) {
  spit(path, format_iris_template(tpl));
}

void write_face_template(const FaceTemplate& tpl,
                         const std::filesystem::path& path) {
  spit(path, format_face_template(tpl));
}

IrisTemplate read_iris_template(const std::filesystem::path& path) {
  return parse_iris_template(slurp(path));
}

FaceTemplate read_face_template(const std::filesystem::path& path) {
  return parse_face_template(slurp(path));
}

}  // namespace biompc
