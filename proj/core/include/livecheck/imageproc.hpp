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
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

#include "livecheck/image.hpp"

namespace livecheck {

// ---- Ingestion ------------------------------------------------------------

/// Decodes an 8-bit grayscale PGM (binary P5 or ASCII P2) and maps each
/// sample v to v / maxval. Throws Error("unsupported format") on anything
/// else, including truncated pixel data.
Image ingest(std::span<const std::uint8_t> bytes);

Image read_image(const std::filesystem::path& path);

/// Encodes as binary P5 with maxval 255, rounding clamped intensities.
std::vector<std::uint8_t> encode_pgm(const Image& img);
void write_pgm(const std::filesystem::path& path, const Image& img);

// ---- Geometry -------------------------------------------------------------

/// Bilinear reduction to floor(scale * dims), sampling at pixel centres.
Image resize_bilinear(const Image& img, double scale);

// ---- Linear filtering -----------------------------------------------------

/// Sampled isotropic Gaussian normalized to unit sum.
Kernel2D gaussian_kernel(int size, double sigma);

/// Same-size 2-D convolution (kernel flipped) with reflected borders.
Image convolve2d(const Image& img, const Kernel2D& kernel);

/// Side and spread of the frequency-filter kernel.
inline constexpr int kFilterKernelSize = 13;
inline constexpr double kFilterSigma = 3.0;

Image lowpass(const Image& img);
/// img - lowpass(img); values may fall outside [0,1].
Image highpass(const Image& img);

/// Gaussian blur with a kernel of side 2*ceil(3 sigma)+1.
Image gaussian_blur(const Image& img, double sigma);

// ---- Morphology and ROI ---------------------------------------------------

Image dilate(const Image& img, int box);
Image erode(const Image& img, int box);
/// Grayscale closing (dilation then erosion) with a flat box element.
Image morph_close(const Image& img, int box);

inline constexpr int kRoiClosingBox = 21;
/// Half-extent of the ROI in standard deviations on each side of the centre.
inline constexpr double kRoiSigmaSpan = 3.0;

/// Locates the foreground by intensity moments of the closed image and
/// returns a rectangle of +/- 3 sigma about the centre of mass, clipped to
/// the image. An all-zero image yields the full-image rectangle.
RoiRect extract_roi(const Image& img);

// ---- Contrast equalization ------------------------------------------------

struct ClaheParams {
  int tiles_x = 8;
  int tiles_y = 8;
  /// Histogram clip level as a multiple of the mean bin count; infinity
  /// disables clipping.
  double clip = 2.0;

  bool operator==(const ClaheParams&) const = default;
};

inline constexpr double kNoClip = std::numeric_limits<double>::infinity();

Image clahe(const Image& img, const ClaheParams& params = {});

}  // namespace livecheck
