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

#include "livecheck/lbp.hpp"

#include <bit>

#include "livecheck/error.hpp"

namespace livecheck {
namespace {

// Row-major patch offsets of the neighbours, clockwise from top-left.
constexpr std::array<int, 8> kNeighbourOrder{0, 1, 2, 5, 8, 7, 6, 3};
constexpr std::array<int, 8> kRowOffset{-1, -1, -1, 0, 1, 1, 1, 0};
constexpr std::array<int, 8> kColOffset{-1, 0, 1, 1, 1, 0, -1, -1};

// Block b of n along an axis of length `extent`; the last block absorbs
// the remainder.
std::pair<int, int> block_span(int b, int n, int extent) {
  const int step = extent / n;
  const int start = b * step;
  const int end = b == n - 1 ? extent : start + step;
  return {start, end};
}

}  // namespace

std::uint8_t lbp_code(const std::array<double, 9>& patch) noexcept {
  const double center = patch[4];
  unsigned code = 0;
  for (int i = 0; i < 8; ++i) code = (code << 1) | (patch[kNeighbourOrder[i]] >= center ? 1u : 0u);
  return static_cast<std::uint8_t>(code);
}

LbpCodeImage lbp_map(const Image& img) {
  require(img.width() >= 3 && img.height() >= 3, "LBP needs an image of at least 3x3");
  LbpCodeImage out{img.width() - 2, img.height() - 2, {}};
  out.codes.resize(static_cast<std::size_t>(out.width) * out.height);
  for (int r = 1; r < img.height() - 1; ++r) {
    for (int c = 1; c < img.width() - 1; ++c) {
      const double center = img(r, c);
      unsigned code = 0;
      for (int i = 0; i < 8; ++i)
        code = (code << 1) | (img(r + kRowOffset[i], c + kColOffset[i]) >= center ? 1u : 0u);
      out.codes[static_cast<std::size_t>(r - 1) * out.width + (c - 1)] =
          static_cast<std::uint8_t>(code);
    }
  }
  return out;
}

int uniform_label(std::uint8_t code) noexcept {
  const auto rotated = static_cast<std::uint8_t>((code << 1) | (code >> 7));
  const int transitions = std::popcount(static_cast<unsigned>(code ^ rotated));
  return transitions <= 2 ? std::popcount(static_cast<unsigned>(code)) : 9;
}

FeatureVector lbp_features(const Image& img, const LbpConfig& cfg) {
  require(cfg.block_rows >= 1 && cfg.block_cols >= 1, "LBP block grid must be at least 1x1");
  const LbpCodeImage codes = lbp_map(img);
  require(codes.height / cfg.block_rows >= 1 && codes.width / cfg.block_cols >= 1,
          "LBP block grid produces an empty block");

  std::array<int, 256> label_of{};
  for (int code = 0; code < 256; ++code)
    label_of[code] = cfg.variant == LbpVariant::original
                         ? code
                         : uniform_label(static_cast<std::uint8_t>(code));

  const int bins = cfg.bins();
  FeatureVector features(static_cast<std::size_t>(cfg.block_rows) * cfg.block_cols * bins, 0.0);
  for (int br = 0; br < cfg.block_rows; ++br) {
    const auto [r0, r1] = block_span(br, cfg.block_rows, codes.height);
    for (int bc = 0; bc < cfg.block_cols; ++bc) {
      const auto [c0, c1] = block_span(bc, cfg.block_cols, codes.width);
      double* hist = features.data() + static_cast<std::size_t>(br * cfg.block_cols + bc) * bins;
      for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) hist[label_of[codes(r, c)]] += 1.0;
      const double count = static_cast<double>(r1 - r0) * (c1 - c0);
      for (int b = 0; b < bins; ++b) hist[b] /= count;
    }
  }
  return features;
}

}  // namespace livecheck
