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

#include "livecheck/imageproc.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "livecheck/error.hpp"

namespace livecheck {
namespace {

int reduced_extent(int n, double scale) {
  return static_cast<int>(std::floor(scale * n + 1e-9));
}

// Sliding max (or min) along rows then columns with reflected borders; a
// flat box is separable.
template <typename Pick>
Image box_filter(const Image& img, int box, Pick pick) {
  require(box >= 1 && box % 2 == 1, "structuring element must have odd size");
  require(box <= std::min(img.width(), img.height()),
          "structuring element larger than image");
  const int half = box / 2;
  Image rows(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      double v = img.reflected(r, c - half);
      for (int d = -half + 1; d <= half; ++d) v = pick(v, img.reflected(r, c + d));
      rows(r, c) = v;
    }
  }
  Image out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      double v = rows.reflected(r - half, c);
      for (int d = -half + 1; d <= half; ++d) v = pick(v, rows.reflected(r + d, c));
      out(r, c) = v;
    }
  }
  return out;
}

struct TileAxis {
  std::vector<int> start;
  std::vector<int> end;
  std::vector<double> center;
};

TileAxis split_axis(int n, int tiles) {
  TileAxis axis;
  for (int t = 0; t < tiles; ++t) {
    const int s = static_cast<int>(static_cast<long>(t) * n / tiles);
    const int e = static_cast<int>(static_cast<long>(t + 1) * n / tiles);
    axis.start.push_back(s);
    axis.end.push_back(e);
    axis.center.push_back((s + e - 1) / 2.0);
  }
  return axis;
}

// Neighbouring tile indices and the weight of the second one.
struct Bracket {
  int lo;
  int hi;
  double w;
};

Bracket bracket(const TileAxis& axis, int pos) {
  const int last = static_cast<int>(axis.center.size()) - 1;
  if (pos <= axis.center.front()) return {0, 0, 0.0};
  if (pos >= axis.center.back()) return {last, last, 0.0};
  int t = 0;
  while (axis.center[t + 1] <= pos) ++t;
  const double w = (pos - axis.center[t]) / (axis.center[t + 1] - axis.center[t]);
  return {t, t + 1, w};
}

int quantize(double v) {
  return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

Image resize_bilinear(const Image& img, double scale) {
  require(scale > 0.0 && scale <= 1.0, "scale must lie in (0, 1]");
  const int out_w = reduced_extent(img.width(), scale);
  const int out_h = reduced_extent(img.height(), scale);
  require(out_w >= 1 && out_h >= 1, "scale yields an empty image");

  const double rx = static_cast<double>(img.width()) / out_w;
  const double ry = static_cast<double>(img.height()) / out_h;
  Image out(out_w, out_h);
  for (int r = 0; r < out_h; ++r) {
    const double sy = std::clamp((r + 0.5) * ry - 0.5, 0.0, img.height() - 1.0);
    const int y0 = static_cast<int>(sy);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double fy = sy - y0;
    for (int c = 0; c < out_w; ++c) {
      const double sx = std::clamp((c + 0.5) * rx - 0.5, 0.0, img.width() - 1.0);
      const int x0 = static_cast<int>(sx);
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double fx = sx - x0;
      const double top = (1.0 - fx) * img(y0, x0) + fx * img(y0, x1);
      const double bottom = (1.0 - fx) * img(y1, x0) + fx * img(y1, x1);
      out(r, c) = (1.0 - fy) * top + fy * bottom;
    }
  }
  return out;
}

Kernel2D gaussian_kernel(int size, double sigma) {
  require(size >= 1 && size % 2 == 1, "kernel size must be odd and positive");
  require(sigma > 0.0, "sigma must be positive");
  const int half = size / 2;
  Kernel2D k{size, std::vector<double>(static_cast<std::size_t>(size) * size)};
  double sum = 0.0;
  for (int dy = -half; dy <= half; ++dy) {
    for (int dx = -half; dx <= half; ++dx) {
      const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k.weights[static_cast<std::size_t>(dy + half) * size + (dx + half)] = w;
      sum += w;
    }
  }
  for (double& w : k.weights) w /= sum;
  return k;
}

Image convolve2d(const Image& img, const Kernel2D& kernel) {
  require(kernel.size >= 1 && kernel.size % 2 == 1, "kernel size must be odd");
  require(kernel.size <= std::min(img.width(), img.height()), "kernel larger than image");
  const int half = kernel.size / 2;
  const int k = kernel.size;
  // Reflected copy padded by `half` on every side.
  const int pw = img.width() + 2 * half;
  const int ph = img.height() + 2 * half;
  std::vector<double> padded(static_cast<std::size_t>(pw) * ph);
  for (int r = 0; r < ph; ++r)
    for (int c = 0; c < pw; ++c)
      padded[static_cast<std::size_t>(r) * pw + c] = img.reflected(r - half, c - half);

  Image out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) {
        const double* row = &padded[static_cast<std::size_t>(r + k - 1 - i) * pw + c + k - 1];
        const double* w = &kernel.weights[static_cast<std::size_t>(i) * k];
        for (int j = 0; j < k; ++j) acc += w[j] * row[-j];
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Image lowpass(const Image& img) {
  return convolve2d(img, gaussian_kernel(kFilterKernelSize, kFilterSigma));
}

Image highpass(const Image& img) {
  const Image low = lowpass(img);
  Image out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out.pixels()[i] = img.pixels()[i] - low.pixels()[i];
  return out;
}

Image gaussian_blur(const Image& img, double sigma) {
  const int half = static_cast<int>(std::ceil(3.0 * sigma));
  return convolve2d(img, gaussian_kernel(2 * half + 1, sigma));
}

Image dilate(const Image& img, int box) {
  return box_filter(img, box, [](double a, double b) { return std::max(a, b); });
}

Image erode(const Image& img, int box) {
  return box_filter(img, box, [](double a, double b) { return std::min(a, b); });
}

Image morph_close(const Image& img, int box) { return erode(dilate(img, box), box); }

RoiRect extract_roi(const Image& img) {
  const RoiRect full{0, 0, img.width(), img.height()};
  // Small images close with the largest odd box that fits.
  int box = std::min({kRoiClosingBox, img.width(), img.height()});
  if (box % 2 == 0) --box;
  const Image closed = morph_close(img, box);

  double total = 0.0, mx = 0.0, my = 0.0;
  for (int r = 0; r < closed.height(); ++r) {
    for (int c = 0; c < closed.width(); ++c) {
      const double w = std::max(closed(r, c), 0.0);
      total += w;
      mx += w * c;
      my += w * r;
    }
  }
  if (total <= 0.0) return full;
  const double cx = mx / total;
  const double cy = my / total;
  double vx = 0.0, vy = 0.0;
  for (int r = 0; r < closed.height(); ++r) {
    for (int c = 0; c < closed.width(); ++c) {
      const double w = std::max(closed(r, c), 0.0);
      vx += w * (c - cx) * (c - cx);
      vy += w * (r - cy) * (r - cy);
    }
  }
  const double sx = std::sqrt(vx / total);
  const double sy = std::sqrt(vy / total);

  const int left = std::max(0, static_cast<int>(std::floor(cx - kRoiSigmaSpan * sx)));
  const int right =
      std::min(img.width() - 1, static_cast<int>(std::ceil(cx + kRoiSigmaSpan * sx)));
  const int top = std::max(0, static_cast<int>(std::floor(cy - kRoiSigmaSpan * sy)));
  const int bottom =
      std::min(img.height() - 1, static_cast<int>(std::ceil(cy + kRoiSigmaSpan * sy)));
  return RoiRect{left, top, right - left + 1, bottom - top + 1};
}

Image clahe(const Image& img, const ClaheParams& params) {
  require(params.tiles_x >= 1 && params.tiles_y >= 1, "CLAHE needs at least one tile");
  require(params.tiles_x <= img.width() && params.tiles_y <= img.height(),
          "CLAHE tile smaller than one pixel");
  require(params.clip > 0.0, "CLAHE clip limit must be positive");

  const TileAxis ys = split_axis(img.height(), params.tiles_y);
  const TileAxis xs = split_axis(img.width(), params.tiles_x);

  using Mapping = std::array<double, 256>;
  std::vector<Mapping> maps(static_cast<std::size_t>(params.tiles_x) * params.tiles_y);
  for (int ty = 0; ty < params.tiles_y; ++ty) {
    for (int tx = 0; tx < params.tiles_x; ++tx) {
      std::array<double, 256> hist{};
      for (int r = ys.start[ty]; r < ys.end[ty]; ++r)
        for (int c = xs.start[tx]; c < xs.end[tx]; ++c) hist[quantize(img(r, c))] += 1.0;
      const double count = static_cast<double>(ys.end[ty] - ys.start[ty]) *
                           (xs.end[tx] - xs.start[tx]);
      if (std::isfinite(params.clip)) {
        const double limit = params.clip * count / 256.0;
        double excess = 0.0;
        for (double& h : hist) {
          if (h > limit) {
            excess += h - limit;
            h = limit;
          }
        }
        for (double& h : hist) h += excess / 256.0;
      }
      Mapping& map = maps[static_cast<std::size_t>(ty) * params.tiles_x + tx];
      double cdf = 0.0;
      for (int level = 0; level < 256; ++level) {
        cdf += hist[level];
        map[level] = std::min(cdf / count, 1.0);
      }
    }
  }

  Image out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    const Bracket by = bracket(ys, r);
    for (int c = 0; c < img.width(); ++c) {
      const Bracket bx = bracket(xs, c);
      const int level = quantize(img(r, c));
      auto at = [&](int ty, int tx) {
        return maps[static_cast<std::size_t>(ty) * params.tiles_x + tx][level];
      };
      const double top = (1.0 - bx.w) * at(by.lo, bx.lo) + bx.w * at(by.lo, bx.hi);
      const double bottom = (1.0 - bx.w) * at(by.hi, bx.lo) + bx.w * at(by.hi, bx.hi);
      out(r, c) = std::clamp((1.0 - by.w) * top + by.w * bottom, 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace livecheck
