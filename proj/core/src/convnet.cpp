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

#include "livecheck/convnet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "livecheck/error.hpp"
#include "livecheck/imageproc.hpp"

namespace livecheck {

FeatureTensor::FeatureTensor(int channels, int height, int width, double fill)
    : channels_(channels), height_(height), width_(width) {
  require(channels >= 1 && height >= 1 && width >= 1, "tensor dimensions must be positive");
  data_.assign(static_cast<std::size_t>(channels) * height * width, fill);
}

FeatureTensor::FeatureTensor(int channels, int height, int width, std::vector<double> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  require(channels >= 1 && height >= 1 && width >= 1, "tensor dimensions must be positive");
  require(data_.size() == static_cast<std::size_t>(channels) * height * width,
          "tensor data length does not match dimensions");
}

FeatureTensor FeatureTensor::from_image(const Image& img) {
  return FeatureTensor(1, img.height(), img.width(),
                       std::vector<double>(img.pixels().begin(), img.pixels().end()));
}

FilterBank init_filters(const ConvLayerConfig& cfg, int in_channels) {
  require(cfg.num_filters >= 1 && in_channels >= 1 && cfg.filter_size >= 1,
          "filter bank dimensions must be positive");
  require(cfg.filter_size % 2 == 1, "filter size must be odd");
  FilterBank bank{cfg.num_filters, in_channels, cfg.filter_size, {}};
  const std::size_t count = static_cast<std::size_t>(cfg.num_filters) * in_channels *
                            cfg.filter_size * cfg.filter_size;
  const double stddev =
      1.0 / std::sqrt(static_cast<double>(in_channels) * cfg.filter_size * cfg.filter_size);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, stddev);
  bank.weights.resize(count);
  for (double& w : bank.weights) w = normal(rng);
  return bank;
}

FeatureTensor conv_forward(const FeatureTensor& x, const FilterBank& bank) {
  require(x.channels() == bank.in_channels, "filter bank channel count mismatch");
  require(x.height() >= bank.filter_size && x.width() >= bank.filter_size,
          "input smaller than filter");
  const int k = bank.filter_size;
  const int out_h = x.height() - k + 1;
  const int out_w = x.width() - k + 1;
  FeatureTensor out(bank.num_filters, out_h, out_w);
  for (int f = 0; f < bank.num_filters; ++f) {
    for (int c = 0; c < x.channels(); ++c) {
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          const double w = bank(f, c, i, j);
          for (int y = 0; y < out_h; ++y) {
            const double* src = &x.data()[(static_cast<std::size_t>(c) * x.height() + y + i) *
                                              x.width() + j];
            double* dst = &out(f, y, 0);
            for (int xx = 0; xx < out_w; ++xx) dst[xx] += w * src[xx];
          }
        }
      }
    }
  }
  return out;
}

FeatureTensor relu(FeatureTensor x) {
  for (double& v : x.data()) v = std::max(0.0, v);
  return x;
}

Kernel2D lcn_window_weights(int window) {
  return gaussian_kernel(window, window / 6.0);
}

namespace {

// Gaussian-weighted sum over all channels at every spatial position, with
// the 2-D window scaled by 1/channels so the 3-D weights sum to 1.
std::vector<double> channel_weighted_sum(const std::vector<double>& plane_sum, int height,
                                         int width, const Kernel2D& w, int channels) {
  const int half = w.size / 2;
  std::vector<double> out(plane_sum.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int p = -half; p <= half; ++p) {
        const int yy = reflect_index(y + p, height);
        for (int q = -half; q <= half; ++q)
          acc += w(p + half, q + half) *
                 plane_sum[static_cast<std::size_t>(yy) * width + reflect_index(x + q, width)];
      }
      out[static_cast<std::size_t>(y) * width + x] = acc / channels;
    }
  }
  return out;
}

}  // namespace

FeatureTensor lcn(const FeatureTensor& x, int window) {
  require(window >= 1 && window % 2 == 1, "normalization window must be odd");
  require(window <= std::min(x.height(), x.width()),
          "normalization window larger than feature map");
  const Kernel2D w = lcn_window_weights(window);
  const int h = x.height(), wd = x.width(), channels = x.channels();
  const std::size_t plane = static_cast<std::size_t>(h) * wd;

  std::vector<double> sum(plane, 0.0);
  for (int c = 0; c < channels; ++c)
    for (std::size_t i = 0; i < plane; ++i) sum[i] += x.data()[c * plane + i];
  const std::vector<double> mean = channel_weighted_sum(sum, h, wd, w, channels);

  FeatureTensor v = x;
  std::vector<double> squares(plane, 0.0);
  for (int c = 0; c < channels; ++c) {
    for (std::size_t i = 0; i < plane; ++i) {
      double& e = v.data()[c * plane + i];
      e -= mean[i];
      squares[i] += e * e;
    }
  }
  const std::vector<double> variance = channel_weighted_sum(squares, h, wd, w, channels);
  for (int c = 0; c < channels; ++c)
    for (std::size_t i = 0; i < plane; ++i)
      v.data()[c * plane + i] /= std::max(1.0, std::sqrt(variance[i]));
  return v;
}

int pooled_extent(int n, int pool, int stride) noexcept {
  // Windows start inside the map; the last one may be clipped.
  return std::min((n - pool + stride - 1) / stride + 1, (n - 1) / stride + 1);
}

FeatureTensor max_pool(const FeatureTensor& x, int pool, int stride) {
  require(pool >= 1 && stride >= 1, "pool size and stride must be positive");
  require(pool <= x.height() && pool <= x.width(), "pool larger than feature map");
  const int out_h = pooled_extent(x.height(), pool, stride);
  const int out_w = pooled_extent(x.width(), pool, stride);
  FeatureTensor out(x.channels(), out_h, out_w);
  for (int c = 0; c < x.channels(); ++c) {
    for (int oy = 0; oy < out_h; ++oy) {
      const int y0 = oy * stride;
      const int y1 = std::min(y0 + pool, x.height());
      for (int ox = 0; ox < out_w; ++ox) {
        const int x0 = ox * stride;
        const int x1 = std::min(x0 + pool, x.width());
        double m = x(c, y0, x0);
        for (int y = y0; y < y1; ++y)
          for (int xx = x0; xx < x1; ++xx) m = std::max(m, x(c, y, xx));
        out(c, oy, ox) = m;
      }
    }
  }
  return out;
}

ConvNet::ConvNet(ConvNetConfig cfg) : cfg_(std::move(cfg)) {
  require(!cfg_.layers.empty() && cfg_.layers.size() <= kMaxConvLayers,
          "convnet needs between 1 and 5 layers");
  int in_channels = 1;
  for (const ConvLayerConfig& layer : cfg_.layers) {
    banks_.push_back(init_filters(layer, in_channels));
    in_channels = layer.num_filters;
  }
}

ConvNet::ConvNet(ConvNetConfig cfg, std::vector<FilterBank> banks)
    : cfg_(std::move(cfg)), banks_(std::move(banks)) {
  require(!cfg_.layers.empty() && cfg_.layers.size() <= kMaxConvLayers,
          "convnet needs between 1 and 5 layers");
  require(banks_.size() == cfg_.layers.size(), "one filter bank per layer required");
  int in_channels = 1;
  for (std::size_t i = 0; i < banks_.size(); ++i) {
    const FilterBank& b = banks_[i];
    require(b.num_filters == cfg_.layers[i].num_filters && b.in_channels == in_channels &&
                b.filter_size == cfg_.layers[i].filter_size &&
                b.weights.size() == static_cast<std::size_t>(b.num_filters) * b.in_channels *
                                        b.filter_size * b.filter_size,
            "filter bank does not match layer configuration");
    in_channels = b.num_filters;
  }
}

FeatureTensor ConvNet::forward(const Image& img) const {
  FeatureTensor t = FeatureTensor::from_image(img);
  for (std::size_t i = 0; i < banks_.size(); ++i) {
    const ConvLayerConfig& layer = cfg_.layers[i];
    t = relu(conv_forward(t, banks_[i]));
    if (layer.lcn_window > 1) t = lcn(t, layer.lcn_window);
    t = max_pool(t, layer.pool_size, layer.pool_stride);
  }
  return t;
}

FeatureVector ConvNet::features(const Image& img) const { return forward(img).data(); }

FeatureVector convnet_features(const Image& img, const ConvNetConfig& cfg) {
  return ConvNet(cfg).features(img);
}

}  // namespace livecheck
