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

#include <cstddef>
#include <span>
#include <vector>

namespace livecheck {

/// Row-major grayscale raster. Ingested images hold intensities in [0,1];
/// filtered images (e.g. high-pass output) may leave that range.
class Image {
 public:
  Image(int width, int height, double fill = 0.0);
  Image(int width, int height, std::vector<double> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  double operator()(int row, int col) const noexcept {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  double& operator()(int row, int col) noexcept {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }

  /// Pixel at (row, col) with symmetric reflection outside the raster.
  double reflected(int row, int col) const noexcept;

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<double> pixels() noexcept { return pixels_; }

  bool operator==(const Image&) const = default;

 private:
  int width_;
  int height_;
  std::vector<double> pixels_;
};

/// Square filter kernel with an odd side length.
struct Kernel2D {
  int size = 1;
  std::vector<double> weights{1.0};

  double operator()(int row, int col) const noexcept {
    return weights[static_cast<std::size_t>(row) * size + col];
  }
};

/// Axis-aligned rectangle in pixel coordinates.
struct RoiRect {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;

  bool operator==(const RoiRect&) const = default;
};

/// Maps any integer index into [0, n) by half-sample symmetric reflection
/// (… c b a | a b c … ), repeating periodically with period 2n.
int reflect_index(int index, int n) noexcept;

/// Exact sub-raster copy. The rectangle must lie inside the image.
Image crop(const Image& img, const RoiRect& rect);

/// Mirror about the vertical axis.
Image flip_horizontal(const Image& img);

}  // namespace livecheck
