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
#include <optional>
#include <string>
#include <vector>

#include "livecheck/convnet.hpp"
#include "livecheck/imageproc.hpp"
#include "livecheck/lbp.hpp"
#include "livecheck/svm.hpp"
#include "livecheck/transform.hpp"
#include "livecheck/types.hpp"

namespace livecheck {

enum class FrequencyFilter { none, lowpass, highpass };

/// Optional preprocessing, applied in the order ROI crop, reduction,
/// contrast equalization, frequency filtering.
struct PreprocessConfig {
  double scale = 1.0;
  FrequencyFilter filter = FrequencyFilter::none;
  bool roi = false;
  bool clahe = false;
  ClaheParams clahe_params{};

  std::string canonical() const;
  bool operator==(const PreprocessConfig&) const = default;
};

enum class ExtractorKind { lbp, convnet };

struct ExtractorConfig {
  ExtractorKind kind = ExtractorKind::lbp;
  LbpConfig lbp{};
  /// Layer seeds are ignored; they are derived from the pipeline seed.
  ConvNetConfig convnet{};

  std::string canonical() const;
  bool operator==(const ExtractorConfig&) const = default;
};

struct TransformConfig {
  /// PCA rank as a fraction of the feature dimension.
  double pca_fraction = 0.2;
  bool whiten = true;

  std::string canonical() const;
  bool operator==(const TransformConfig&) const = default;
};

struct ClassifierConfig {
  double C = 10.0;
  /// RBF width; 1 / (PCA rank) when unset.
  std::optional<double> gamma;
  double tol = 1e-3;
  std::size_t max_iterations = 10'000'000;

  std::string canonical() const;
  bool operator==(const ClassifierConfig&) const = default;
};

struct PipelineConfig {
  PreprocessConfig preprocess{};
  bool augment = false;
  ExtractorConfig extract{};
  TransformConfig transform{};
  ClassifierConfig classify{};
  /// Root of every random stream (filters, PCA, CV shuffles).
  std::uint64_t seed = 0;

  std::string canonical() const;
  bool operator==(const PipelineConfig&) const = default;
};

Image preprocess(const Image& img, const PreprocessConfig& cfg);

/// Convnet configuration with per-layer seeds derived from `root_seed`.
ConvNetConfig seeded_convnet(const ConvNetConfig& cfg, std::uint64_t root_seed);

/// Feature extractor with any random state realized.
class FeatureExtractor {
 public:
  FeatureExtractor(const ExtractorConfig& cfg, std::uint64_t root_seed);
  FeatureExtractor(const ExtractorConfig& cfg, ConvNet net);

  const ExtractorConfig& config() const noexcept { return cfg_; }
  const std::optional<ConvNet>& convnet() const noexcept { return net_; }

  FeatureVector operator()(const Image& img) const;

 private:
  ExtractorConfig cfg_;
  std::optional<ConvNet> net_;
};

/// Feature rows for one preprocessed image: one row, or ten patch rows
/// (make_patches order) when augmenting.
std::vector<FeatureVector> extract_rows(const FeatureExtractor& extractor, const Image& img,
                                        bool augment);

/// Every fitted stage of a pipeline.
struct TrainedPipeline {
  PipelineConfig config;
  FeatureExtractor extractor;
  Standardizer standardizer;
  PcaModel pca;
  SvmModel svm;

  /// Standardized and PCA-projected feature row.
  FeatureVector embed(const FeatureVector& features) const;

  /// Decision score of a raw image: the mean over the ten patches when the
  /// pipeline was trained with augmentation, else the whole-image score.
  double score(const Image& img) const;
  Label predict(const Image& img) const { return from_score(score(img)); }
};

/// Mean of the ten per-patch decision scores. Requires a pipeline trained
/// with augmentation.
double averaged_score(const TrainedPipeline& model, const Image& img);

/// Standardizer and PCA fitted on training feature rows.
struct FittedTransform {
  Standardizer standardizer;
  PcaModel pca;

  FeatureMatrix apply(const FeatureMatrix& X) const;
};

FittedTransform fit_transform(const FeatureMatrix& train, const TransformConfig& cfg,
                              std::uint64_t root_seed);

/// SVM parameters with gamma resolved against the PCA rank.
SvmParams resolve_svm_params(const ClassifierConfig& cfg, int pca_rank);

/// Fits every stage on the full data set.
TrainedPipeline fit_final(const std::vector<LabeledImage>& data, const PipelineConfig& config,
                          unsigned threads = 0);

}  // namespace livecheck
