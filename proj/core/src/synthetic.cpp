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

#include "livecheck/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "livecheck/error.hpp"
#include "livecheck/imageproc.hpp"

namespace livecheck {
namespace {

// Difference of Gaussians over white noise, rescaled to unit deviation.
Image bandpass_noise(std::mt19937_64& rng, int size) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Image white(size, size);
  for (double& v : white.pixels()) v = normal(rng);
  const Image fine = gaussian_blur(white, 0.5);
  const Image coarse = gaussian_blur(white, 2.0);
  Image out(size, size);
  double sq = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.pixels()[i] = fine.pixels()[i] - coarse.pixels()[i];
    sq += out.pixels()[i] * out.pixels()[i];
  }
  const double scale = 1.0 / std::sqrt(sq / static_cast<double>(out.size()) + 1e-300);
  for (double& v : out.pixels()) v *= scale;
  return out;
}

Image quantized(const Image& img) { return ingest(encode_pgm(img)); }

}  // namespace

Image synth_ridge_texture(std::mt19937_64& rng, const TextureParams& p) {
  require(p.size >= 16, "synthetic textures need at least 16x16 pixels");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double theta = unit(rng) * std::numbers::pi;
  const double period = p.min_period + unit(rng) * (p.max_period - p.min_period);
  const double phase = unit(rng) * 2.0 * std::numbers::pi;
  const Image noise = bandpass_noise(rng, p.size);
  const double kx = std::cos(theta) * 2.0 * std::numbers::pi / period;
  const double ky = std::sin(theta) * 2.0 * std::numbers::pi / period;

  Image img(p.size, p.size);
  for (int r = 0; r < p.size; ++r) {
    for (int c = 0; c < p.size; ++c) {
      const double v = 0.5 + p.ridge_amplitude * std::sin(kx * c + ky * r + phase) +
                       p.noise_amplitude * noise(r, c);
      img(r, c) = std::clamp(v, 0.0, 1.0);
    }
  }
  return img;
}

std::vector<LabeledImage> make_texture_dataset(std::size_t per_class, std::uint64_t seed,
                                               const TextureParams& params) {
  std::mt19937_64 rng(seed);
  std::vector<LabeledImage> out;
  out.reserve(per_class * 2);
  for (std::size_t i = 0; i < per_class; ++i) {
    const Image live = synth_ridge_texture(rng, params);
    const Image fake = synth_ridge_texture(rng, params);
    out.push_back({quantized(live), Label::live});
    out.push_back({quantized(gaussian_blur(fake, params.fake_blur_sigma)), Label::fake});
  }
  return out;
}

}  // namespace livecheck
