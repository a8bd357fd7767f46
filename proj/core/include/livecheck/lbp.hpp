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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "livecheck/image.hpp"
#include "livecheck/types.hpp"

namespace livecheck {

enum class LbpVariant { original, uniform };

struct LbpConfig {
  LbpVariant variant = LbpVariant::uniform;
  int block_rows = 1;
  int block_cols = 1;

  int bins() const noexcept { return variant == LbpVariant::original ? 256 : 10; }
  bool operator==(const LbpConfig&) const = default;
};

struct LbpCodeImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> codes;

  std::uint8_t operator()(int row, int col) const noexcept {
    return codes[static_cast<std::size_t>(row) * width + col];
  }
};

/// 8-bit code of a row-major 3x3 patch. Neighbours are visited clockwise
/// from the top-left corner, which lands in the most significant bit; a bit
/// is set when the neighbour is >= the centre.
std::uint8_t lbp_code(const std::array<double, 9>& patch) noexcept;

/// Codes for every interior pixel; the one-pixel border is dropped.
LbpCodeImage lbp_map(const Image& img);

/// Rotation-invariant uniform label: popcount for codes with at most two
/// circular bit transitions, 9 otherwise.
int uniform_label(std::uint8_t code) noexcept;

/// Concatenated, per-block L1-normalized code (or label) histograms in
/// row-major block order. Remainder rows/columns go to the last block.
FeatureVector lbp_features(const Image& img, const LbpConfig& cfg);

}  // namespace livecheck
