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
#include <vector>

#include "livecheck/image.hpp"
#include "livecheck/types.hpp"

namespace livecheck {

inline constexpr int kPatchCount = 10;
inline constexpr double kPatchFraction = 0.8;

enum class PatchOrigin { top_left, top_right, bottom_left, bottom_right, center };

/// Ten equally sized crops: for each of [TL, TR, BL, BR, center] the crop
/// at index 2i and its horizontal mirror at 2i + 1.
struct PatchSet {
  std::vector<Image> patches;
  std::array<RoiRect, 5> crops;
};

/// Crop rectangles of floor(0.8 H) x floor(0.8 W) in PatchOrigin order.
std::array<RoiRect, 5> patch_crops(int width, int height);

PatchSet make_patches(const Image& img);

/// Each sample replaced by its ten patches, which inherit its label.
/// Patches of sample i occupy positions 10i .. 10i+9.
std::vector<LabeledImage> augment_training(const std::vector<LabeledImage>& samples);

/// Mean of per-patch scores over the ten patches of `img`.
template <typename PatchScorer>
double averaged_score(const Image& img, PatchScorer&& score_patch) {
  const PatchSet set = make_patches(img);
  double sum = 0.0;
  for (const Image& patch : set.patches) sum += score_patch(patch);
  return sum / kPatchCount;
}

}  // namespace livecheck
