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

// Brute-force reference implementations used as test oracles. They follow
// the mathematical definitions directly and share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "livecheck/convnet.hpp"
#include "livecheck/image.hpp"
#include "livecheck/svm.hpp"

namespace livecheck::oracle {

inline Image random_image(std::mt19937_64& rng, int width, int height) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image img(width, height);
  for (double& p : img.pixels()) p = u(rng);
  return img;
}

/// Random image on the 8-bit grid, so ties between neighbours occur.
inline Image random_quantized_image(std::mt19937_64& rng, int width, int height, int levels = 256) {
  std::uniform_int_distribution<int> u(0, levels - 1);
  Image img(width, height);
  for (double& p : img.pixels()) p = u(rng) / 255.0;
  return img;
}

inline FeatureTensor random_tensor(std::mt19937_64& rng, int c, int h, int w, double lo = -1.0,
                                   double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  FeatureTensor t(c, h, w);
  for (double& v : t.data()) v = u(rng);
  return t;
}

/// Mirror index for the "c b a | a b c" border rule.
inline int mirror(int i, int n) {
  while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
  return i;
}

inline double gaussian_weight(int dx, int dy, double sigma) {
  return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
}

/// Normalized size x size Gaussian, row-major.
inline std::vector<double> gaussian_window(int size, double sigma) {
  const int half = size / 2;
  std::vector<double> w;
  double total = 0.0;
  for (int y = -half; y <= half; ++y)
    for (int x = -half; x <= half; ++x) {
      w.push_back(gaussian_weight(x, y, sigma));
      total += w.back();
    }
  for (double& v : w) v /= total;
  return w;
}

/// True 2-D convolution with mirrored borders.
inline Image convolve(const Image& img, const std::vector<double>& kernel, int size) {
  const int half = size / 2;
  Image out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c) {
      double acc = 0.0;
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
          acc += kernel[i * size + j] *
                 img(mirror(r - (i - half), img.height()), mirror(c - (j - half), img.width()));
      out(r, c) = acc;
    }
  return out;
}

/// Box max (or min) over a size x size neighbourhood with mirrored borders.
inline Image box_extreme(const Image& img, int size, bool take_max) {
  const int half = size / 2;
  Image out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c) {
      double best = take_max ? -INFINITY : INFINITY;
      for (int dy = -half; dy <= half; ++dy)
        for (int dx = -half; dx <= half; ++dx) {
          const double v = img(mirror(r + dy, img.height()), mirror(c + dx, img.width()));
          best = take_max ? std::max(best, v) : std::min(best, v);
        }
      out(r, c) = best;
    }
  return out;
}

/// LBP code by walking the eight neighbours clockwise from the top-left.
inline int lbp_code_at(const Image& img, int r, int c) {
  static constexpr std::array<std::array<int, 2>, 8> kOffsets{
      {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}}};
  int code = 0;
  for (int k = 0; k < 8; ++k) {
    const bool bit = img(r + kOffsets[k][0], c + kOffsets[k][1]) >= img(r, c);
    if (bit) code |= 1 << (7 - k);
  }
  return code;
}

inline int circular_transitions(int code) {
  int count = 0;
  for (int k = 0; k < 8; ++k) count += ((code >> k) & 1) != ((code >> ((k + 1) % 8)) & 1);
  return count;
}

inline int uniform_label_of(int code) {
  if (circular_transitions(code) > 2) return 9;
  int ones = 0;
  for (int k = 0; k < 8; ++k) ones += (code >> k) & 1;
  return ones;
}

/// Normalized per-block histograms over interior pixels; block boundaries
/// are floor(i * n / blocks) except that the last block absorbs the rest.
inline std::vector<double> lbp_histograms(const Image& img, bool uniform, int block_rows,
                                          int block_cols) {
  const int h = img.height() - 2;
  const int w = img.width() - 2;
  const int bins = uniform ? 10 : 256;
  const int bh = h / block_rows;
  const int bw = w / block_cols;
  std::vector<double> out;
  for (int br = 0; br < block_rows; ++br)
    for (int bc = 0; bc < block_cols; ++bc) {
      const int r0 = br * bh, r1 = br == block_rows - 1 ? h : r0 + bh;
      const int c0 = bc * bw, c1 = bc == block_cols - 1 ? w : c0 + bw;
      std::vector<double> hist(bins, 0.0);
      for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) {
          const int code = lbp_code_at(img, r + 1, c + 1);
          hist[uniform ? uniform_label_of(code) : code] += 1.0;
        }
      const double n = static_cast<double>((r1 - r0) * (c1 - c0));
      for (double v : hist) out.push_back(v / n);
    }
  return out;
}

/// Valid multi-channel correlation.
inline FeatureTensor correlate(const FeatureTensor& x, const FilterBank& bank) {
  const int k = bank.filter_size;
  FeatureTensor out(bank.num_filters, x.height() - k + 1, x.width() - k + 1);
  for (int f = 0; f < bank.num_filters; ++f)
    for (int y = 0; y < out.height(); ++y)
      for (int xx = 0; xx < out.width(); ++xx) {
        double acc = 0.0;
        for (int c = 0; c < x.channels(); ++c)
          for (int p = 0; p < k; ++p)
            for (int q = 0; q < k; ++q) acc += bank(f, c, p, q) * x(c, y + p, xx + q);
        out(f, y, xx) = acc;
      }
  return out;
}

inline FeatureTensor rectify(FeatureTensor x) {
  for (double& v : x.data()) v = v > 0.0 ? v : 0.0;
  return x;
}

/// Gaussian window replicated across channels, normalized over all of it.
inline std::vector<double> lcn_weights_3d(int channels, int window) {
  const int half = window / 2;
  std::vector<double> w3;
  double total = 0.0;
  for (int i = 0; i < channels; ++i)
    for (int p = -half; p <= half; ++p)
      for (int q = -half; q <= half; ++q) {
        w3.push_back(gaussian_weight(p, q, window / 6.0));
        total += w3.back();
      }
  for (double& v : w3) v /= total;
  return w3;
}

inline double lcn_window_sum(const FeatureTensor& t, const std::vector<double>& w3, int window,
                             int j, int k, bool squared) {
  const int half = window / 2;
  double acc = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < t.channels(); ++i)
    for (int p = -half; p <= half; ++p)
      for (int q = -half; q <= half; ++q) {
        const double v = t(i, mirror(j + p, t.height()), mirror(k + q, t.width()));
        acc += w3[idx++] * (squared ? v * v : v);
      }
  return acc;
}

/// Subtractive normalization by direct summation over the 3-D window.
inline FeatureTensor subtractive(const FeatureTensor& x, int window) {
  const auto w3 = lcn_weights_3d(x.channels(), window);
  FeatureTensor v(x.channels(), x.height(), x.width());
  for (int i = 0; i < x.channels(); ++i)
    for (int j = 0; j < x.height(); ++j)
      for (int k = 0; k < x.width(); ++k)
        v(i, j, k) = x(i, j, k) - lcn_window_sum(x, w3, window, j, k, false);
  return v;
}

/// Subtractive then divisive normalization with divisor max(1, sigma).
inline FeatureTensor normalize(const FeatureTensor& x, int window) {
  const auto w3 = lcn_weights_3d(x.channels(), window);
  const FeatureTensor v = subtractive(x, window);
  FeatureTensor y(x.channels(), x.height(), x.width());
  for (int j = 0; j < x.height(); ++j)
    for (int k = 0; k < x.width(); ++k) {
      const double sigma = std::sqrt(lcn_window_sum(v, w3, window, j, k, true));
      for (int i = 0; i < x.channels(); ++i) y(i, j, k) = v(i, j, k) / std::max(1.0, sigma);
    }
  return y;
}

/// Max over window starts 0, stride, 2 stride, ... inside the map, up to
/// the first window that reaches the far edge, which is clipped.
inline FeatureTensor pool_max(const FeatureTensor& x, int pool, int stride) {
  std::vector<int> ys, xs;
  for (int s = 0;; s += stride) {
    ys.push_back(s);
    if (s + pool >= x.height() || s + stride >= x.height()) break;
  }
  for (int s = 0;; s += stride) {
    xs.push_back(s);
    if (s + pool >= x.width() || s + stride >= x.width()) break;
  }
  FeatureTensor out(x.channels(), static_cast<int>(ys.size()), static_cast<int>(xs.size()));
  for (int c = 0; c < x.channels(); ++c)
    for (std::size_t a = 0; a < ys.size(); ++a)
      for (std::size_t b = 0; b < xs.size(); ++b) {
        double best = -INFINITY;
        for (int y = ys[a]; y < std::min(ys[a] + pool, x.height()); ++y)
          for (int xx = xs[b]; xx < std::min(xs[b] + pool, x.width()); ++xx)
            best = std::max(best, x(c, y, xx));
        out(c, static_cast<int>(a), static_cast<int>(b)) = best;
      }
  return out;
}

/// Largest principal angle between the row spaces of two k x d matrices
/// with orthonormal rows.
inline double max_principal_angle(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A * B.transpose());
  const double smallest = std::min(1.0, svd.singularValues().minCoeff());
  // acos loses precision near 1; use the sine of the angle instead.
  const Eigen::MatrixXd residual = B - B * A.transpose() * A;
  const double sine = Eigen::JacobiSVD<Eigen::MatrixXd>(residual).singularValues().maxCoeff();
  return std::max(std::acos(smallest), std::asin(std::min(1.0, sine)));
}

/// Top-k eigenvectors (rows) of the sample covariance, by a dense symmetric
/// eigensolver.
inline Eigen::MatrixXd covariance_eigenvectors(const Eigen::MatrixXd& X, int k,
                                               Eigen::VectorXd* variances = nullptr) {
  const Eigen::RowVectorXd mean = X.colwise().mean();
  const Eigen::MatrixXd centered = X.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / (X.rows() - 1.0);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const int d = static_cast<int>(X.cols());
  Eigen::MatrixXd rows(k, d);
  if (variances) variances->resize(k);
  for (int i = 0; i < k; ++i) {
    rows.row(i) = eig.eigenvectors().col(d - 1 - i).transpose();
    if (variances) (*variances)(i) = eig.eigenvalues()(d - 1 - i);
  }
  return rows;
}

/// Kernel expansion summed in reverse support-vector order.
inline double kernel_expansion(const SvmModel& model, const std::vector<double>& x) {
  double acc = 0.0;
  for (Eigen::Index i = model.support_vectors.rows() - 1; i >= 0; --i) {
    double dist = 0.0;
    for (Eigen::Index j = 0; j < model.support_vectors.cols(); ++j) {
      const double diff = model.support_vectors(i, j) - x[static_cast<std::size_t>(j)];
      dist += diff * diff;
    }
    acc += model.coefficients(i) * std::exp(-model.gamma * dist);
  }
  return acc + model.bias;
}

inline std::vector<double> row(const Eigen::MatrixXd& X, Eigen::Index i) {
  std::vector<double> out(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index j = 0; j < X.cols(); ++j) out[static_cast<std::size_t>(j)] = X(i, j);
  return out;
}

}  // namespace livecheck::oracle
