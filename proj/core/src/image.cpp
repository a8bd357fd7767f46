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

#include "livecheck/image.hpp"

#include <algorithm>
#include <string>

#include "livecheck/error.hpp"
#include "livecheck/types.hpp"

namespace livecheck {

Image::Image(int width, int height, double fill)
    : width_(width), height_(height) {
  require(width >= 1 && height >= 1, "image dimensions must be positive");
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  require(width >= 1 && height >= 1, "image dimensions must be positive");
  require(pixels_.size() == static_cast<std::size_t>(width) * height,
          "pixel count does not match image dimensions");
}

double Image::reflected(int row, int col) const noexcept {
  return (*this)(reflect_index(row, height_), reflect_index(col, width_));
}

int reflect_index(int index, int n) noexcept {
  const int period = 2 * n;
  int m = index % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

Image crop(const Image& img, const RoiRect& rect) {
  require(rect.width >= 1 && rect.height >= 1 && rect.x0 >= 0 && rect.y0 >= 0 &&
              rect.x0 + rect.width <= img.width() && rect.y0 + rect.height <= img.height(),
          "crop rectangle outside image");
  Image out(rect.width, rect.height);
  for (int r = 0; r < rect.height; ++r)
    for (int c = 0; c < rect.width; ++c) out(r, c) = img(rect.y0 + r, rect.x0 + c);
  return out;
}

Image flip_horizontal(const Image& img) {
  Image out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c) out(r, c) = img(r, img.width() - 1 - c);
  return out;
}

FeatureMatrix stack_rows(const std::vector<FeatureVector>& rows) {
  if (rows.empty()) return FeatureMatrix(0, 0);
  const auto cols = static_cast<Eigen::Index>(rows.front().size());
  FeatureMatrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(static_cast<Eigen::Index>(rows[i].size()) == cols,
            "feature rows have differing lengths");
    for (Eigen::Index j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][j];
  }
  return m;
}

}  // namespace livecheck
