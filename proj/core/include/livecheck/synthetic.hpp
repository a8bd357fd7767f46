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

#include <cstdint>
#include <random>
#include <vector>

#include "livecheck/image.hpp"
#include "livecheck/types.hpp"

namespace livecheck {

/// Two-class ridge-texture generator. Live samples are an oriented
/// sinusoid plus band-limited noise; fake samples are the same texture
/// smoothed by a Gaussian blur.
struct TextureParams {
  int size = 64;
  double min_period = 6.0;
  double max_period = 10.0;
  double ridge_amplitude = 0.3;
  double noise_amplitude = 0.12;
  double fake_blur_sigma = 1.5;
};

Image synth_ridge_texture(std::mt19937_64& rng, const TextureParams& params);

/// `per_class` live and `per_class` fake images, interleaved live/fake,
/// quantized to 8 bits.
std::vector<LabeledImage> make_texture_dataset(std::size_t per_class, std::uint64_t seed,
                                               const TextureParams& params = {});

}  // namespace livecheck
