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
#include <vector>

#include "livecheck/image.hpp"
#include "livecheck/types.hpp"

namespace livecheck {

/// Stack of feature maps, channel-major then row-major.
class FeatureTensor {
 public:
  FeatureTensor(int channels, int height, int width, double fill = 0.0);
  FeatureTensor(int channels, int height, int width, std::vector<double> data);

  /// Single-channel tensor holding the image intensities.
  static FeatureTensor from_image(const Image& img);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(int c, int y, int x) const noexcept { return data_[index(c, y, x)]; }
  double& operator()(int c, int y, int x) noexcept { return data_[index(c, y, x)]; }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  bool operator==(const FeatureTensor&) const = default;

 private:
  std::size_t index(int c, int y, int x) const noexcept {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int channels_;
  int height_;
  int width_;
  std::vector<double> data_;
};

struct ConvLayerConfig {
  int num_filters = 16;
  int filter_size = 5;
  int pool_size = 3;
  int pool_stride = 3;
  /// Side of the Gaussian normalization window; values <= 1 skip the
  /// normalization stage for this layer.
  int lcn_window = 9;
  std::uint64_t seed = 0;

  bool operator==(const ConvLayerConfig&) const = default;
};

struct ConvNetConfig {
  std::vector<ConvLayerConfig> layers;

  bool operator==(const ConvNetConfig&) const = default;
};

inline constexpr int kMaxConvLayers = 5;

/// Random filter weights, indexed [filter][channel][row][col].
struct FilterBank {
  int num_filters = 0;
  int in_channels = 0;
  int filter_size = 0;
  std::vector<double> weights;

  double operator()(int f, int c, int y, int x) const noexcept {
    return weights[((static_cast<std::size_t>(f) * in_channels + c) * filter_size + y) *
                       filter_size + x];
  }
  bool operator==(const FilterBank&) const = default;
};

/// I.i.d. N(0, 1/(in_channels * filter_size^2)) weights from cfg.seed.
FilterBank init_filters(const ConvLayerConfig& cfg, int in_channels);

/// Valid multi-channel correlation: out[f] = sum_c x[c] (*) bank[f][c].
FeatureTensor conv_forward(const FeatureTensor& x, const FilterBank& bank);

FeatureTensor relu(FeatureTensor x);

/// Gaussian weights for the normalization window, sigma = window / 6,
/// summing to 1 over the 2-D window.
Kernel2D lcn_window_weights(int window);

/// Subtractive then divisive local contrast normalization with a Gaussian
/// window shared across channels (weights sum to 1 over the whole 3-D
/// neighbourhood), reflected borders, and divisor max(1, sigma).
FeatureTensor lcn(const FeatureTensor& x, int window);

/// Per-channel max over pool x pool windows stepped by stride. Windows
/// clipped by the right/bottom edge are kept so every input cell is pooled.
FeatureTensor max_pool(const FeatureTensor& x, int pool, int stride);

/// Spatial extent after max_pool on an axis of length n.
int pooled_extent(int n, int pool, int stride) noexcept;

/// Random-filter convolutional feature extractor with realized banks.
class ConvNet {
 public:
  explicit ConvNet(ConvNetConfig cfg);
  ConvNet(ConvNetConfig cfg, std::vector<FilterBank> banks);

  const ConvNetConfig& config() const noexcept { return cfg_; }
  const std::vector<FilterBank>& banks() const noexcept { return banks_; }

  /// conv -> relu -> lcn -> max_pool per layer, flattened channel-major.
  FeatureVector features(const Image& img) const;
  FeatureTensor forward(const Image& img) const;

 private:
  ConvNetConfig cfg_;
  std::vector<FilterBank> banks_;
};

FeatureVector convnet_features(const Image& img, const ConvNetConfig& cfg);

}  // namespace livecheck
