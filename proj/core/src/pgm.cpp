/**
 * Copyright 2026 The LiveCheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "livecheck/error.hpp"
#include "livecheck/imageproc.hpp"

namespace livecheck {
namespace {

class HeaderParser {
 public:
  explicit HeaderParser(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::optional<long> number() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) return std::nullopt;
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return value;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

[[noreturn]] void unsupported() { throw Error("unsupported format"); }

}  // namespace

Image ingest(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
    unsupported();
  const bool binary = bytes[1] == '5';
  HeaderParser parser(bytes);
  parser.advance(2);
  const auto width = parser.number();
  const auto height = parser.number();
  const auto maxval = parser.number();
  if (!width || !height || !maxval) unsupported();
  if (*width == 0 || *height == 0) throw Error("zero-dimension image");
  if (*maxval < 1 || *maxval > 255) unsupported();

  const std::size_t count = static_cast<std::size_t>(*width) * static_cast<std::size_t>(*height);
  std::vector<double> pixels(count);
  const double maxval_d = static_cast<double>(*maxval);
  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (parser.pos() >= bytes.size() || !std::isspace(bytes[parser.pos()])) unsupported();
    const std::size_t start = parser.pos() + 1;
    if (bytes.size() - start < count) unsupported();
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t v = bytes[start + i];
      if (v > *maxval) unsupported();
      pixels[i] = v / maxval_d;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = parser.number();
      if (!v || *v > *maxval) unsupported();
      pixels[i] = static_cast<double>(*v) / maxval_d;
    }
  }
  return Image(static_cast<int>(*width), static_cast<int>(*height), std::move(pixels));
}

Image read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open image: " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
  try {
    return ingest(bytes);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_pgm(const Image& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.size());
  for (double v : img.pixels()) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    out.push_back(static_cast<std::uint8_t>(std::lround(clamped * 255.0)));
  }
  return out;
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
  const auto bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write image: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace livecheck
