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

#include <random>

#include <gtest/gtest.h>

#include "livecheck/augment.hpp"
#include "support/oracles.hpp"

namespace livecheck {
namespace {

TEST(Patches, CropOriginsOnHundredSquare) {
  const auto crops = patch_crops(100, 100);
  EXPECT_EQ(crops[0], (RoiRect{0, 0, 80, 80}));
  EXPECT_EQ(crops[1], (RoiRect{20, 0, 80, 80}));
  EXPECT_EQ(crops[2], (RoiRect{0, 20, 80, 80}));
  EXPECT_EQ(crops[3], (RoiRect{20, 20, 80, 80}));
  EXPECT_EQ(crops[4], (RoiRect{10, 10, 80, 80}));
}

TEST(Patches, OddGapCentreRoundsDown) {
  const auto crops = patch_crops(13, 11);  // 10 x 8 crops, gaps 3 and 3
  EXPECT_EQ(crops[4], (RoiRect{1, 1, 10, 8}));
  EXPECT_EQ(crops[3], (RoiRect{3, 3, 10, 8}));
}

TEST(Patches, TenPatchesWithMirrors) {
  std::mt19937_64 rng(1);
  const Image img = oracle::random_image(rng, 100, 100);
  const PatchSet set = make_patches(img);
  ASSERT_EQ(set.patches.size(), 10u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(set.patches[2 * i], crop(img, set.crops[i]));
    EXPECT_EQ(set.patches[2 * i + 1], flip_horizontal(set.patches[2 * i]));
    EXPECT_EQ(flip_horizontal(set.patches[2 * i + 1]), set.patches[2 * i]);
  }
}

TEST(Patches, SymmetricImageHasIdenticalCentreMirror) {
  std::mt19937_64 rng(2);
  Image img = oracle::random_image(rng, 50, 40);
  for (int r = 0; r < 40; ++r)
    for (int c = 0; c < 25; ++c) img(r, 49 - c) = img(r, c);
  const PatchSet set = make_patches(img);
  EXPECT_EQ(set.patches[8], set.patches[9]);
}

TEST(Augment, ExpandsTenfoldPreservingLabelsAndOrder) {
  std::mt19937_64 rng(3);
  std::vector<LabeledImage> samples;
  for (Label l : {Label::live, Label::fake, Label::live})
    samples.push_back({oracle::random_image(rng, 20, 15), l});
  const auto out = augment_training(samples);
  ASSERT_EQ(out.size(), 30u);
  for (std::size_t i = 0; i < 3; ++i) {
    const PatchSet set = make_patches(samples[i].image);
    for (std::size_t k = 0; k < 10; ++k) {
      EXPECT_EQ(out[10 * i + k].label, samples[i].label);
      EXPECT_EQ(out[10 * i + k].image, set.patches[k]);
    }
  }
}

TEST(AveragedScore, ConstantScores) {
  const Image img(30, 30, 0.5);
  EXPECT_DOUBLE_EQ(averaged_score(img, [](const Image&) { return 0.37; }), 0.37);
}

TEST(AveragedScore, BalancedVotesTieToLive) {
  std::mt19937_64 rng(4);
  const Image img = oracle::random_image(rng, 30, 30);
  int calls = 0;
  const double s = averaged_score(img, [&](const Image&) { return calls++ % 2 == 0 ? 1.0 : -1.0; });
  EXPECT_EQ(s, 0.0);
  EXPECT_EQ(from_score(s), Label::live);
}

}  // namespace
}  // namespace livecheck
