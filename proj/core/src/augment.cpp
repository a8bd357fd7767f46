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

#include "livecheck/augment.hpp"

#include "livecheck/error.hpp"

namespace livecheck {

std::array<RoiRect, 5> patch_crops(int width, int height) {
  require(width >= 5 && height >= 5, "image too small for augmentation patches");
  const int w = static_cast<int>(kPatchFraction * width + 1e-9);
  const int h = static_cast<int>(kPatchFraction * height + 1e-9);
  return {RoiRect{0, 0, w, h}, RoiRect{width - w, 0, w, h}, RoiRect{0, height - h, w, h},
          RoiRect{width - w, height - h, w, h},
          RoiRect{(width - w) / 2, (height - h) / 2, w, h}};
}

PatchSet make_patches(const Image& img) {
  PatchSet set;
  set.crops = patch_crops(img.width(), img.height());
  set.patches.reserve(kPatchCount);
  for (const RoiRect& rect : set.crops) {
    Image patch = crop(img, rect);
    Image mirrored = flip_horizontal(patch);
    set.patches.push_back(std::move(patch));
    set.patches.push_back(std::move(mirrored));
  }
  return set;
}

std::vector<LabeledImage> augment_training(const std::vector<LabeledImage>& samples) {
  std::vector<LabeledImage> out;
  out.reserve(samples.size() * kPatchCount);
  for (const LabeledImage& sample : samples) {
    PatchSet set = make_patches(sample.image);
    for (Image& patch : set.patches) out.push_back({std::move(patch), sample.label});
  }
  return out;
}

}  // namespace livecheck
