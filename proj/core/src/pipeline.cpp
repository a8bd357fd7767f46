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

#include "livecheck/pipeline.hpp"

#include <charconv>
#include <string>

#include "livecheck/augment.hpp"
#include "livecheck/error.hpp"
#include "livecheck/parallel.hpp"
#include "livecheck/seed.hpp"

namespace livecheck {
namespace {

std::string num(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

const char* filter_name(FrequencyFilter f) {
  switch (f) {
    case FrequencyFilter::lowpass: return "lowpass";
    case FrequencyFilter::highpass: return "highpass";
    default: return "none";
  }
}

}  // namespace

std::string PreprocessConfig::canonical() const {
  std::string s = "scale=" + num(scale) + ";filter=" + filter_name(filter) +
                  ";roi=" + (roi ? "1" : "0") + ";clahe=";
  if (clahe)
    s += num(clahe_params.tiles_x) + "x" + num(clahe_params.tiles_y) + ":" + num(clahe_params.clip);
  else
    s += "0";
  return s;
}

std::string ExtractorConfig::canonical() const {
  if (kind == ExtractorKind::lbp) {
    return std::string("lbp:") + (lbp.variant == LbpVariant::original ? "original" : "uniform") +
           ":" + num(lbp.block_rows) + "x" + num(lbp.block_cols);
  }
  std::string s = "convnet:";
  for (std::size_t i = 0; i < convnet.layers.size(); ++i) {
    const ConvLayerConfig& l = convnet.layers[i];
    if (i > 0) s += "/";
    s += num(l.num_filters) + ":" + num(l.filter_size) + ":" + num(l.pool_size) + ":" +
         num(l.pool_stride) + ":" + num(l.lcn_window);
  }
  return s;
}

std::string TransformConfig::canonical() const {
  return "pca=" + num(pca_fraction) + ";whiten=" + (whiten ? "1" : "0");
}

std::string ClassifierConfig::canonical() const {
  return "C=" + num(C) + ";gamma=" + (gamma ? num(*gamma) : std::string("auto")) +
         ";tol=" + num(tol) + ";max_iterations=" + num(static_cast<std::uint64_t>(max_iterations));
}

std::string PipelineConfig::canonical() const {
  return "[preprocess " + preprocess.canonical() + "] [augment " + (augment ? "1" : "0") +
         "] [extract " + extract.canonical() + "] [transform " + transform.canonical() +
         "] [classify " + classify.canonical() + "] [seed " + num(seed) + "]";
}

Image preprocess(const Image& img, const PreprocessConfig& cfg) {
  Image out = cfg.roi ? crop(img, extract_roi(img)) : img;
  if (cfg.scale != 1.0) out = resize_bilinear(out, cfg.scale);
  if (cfg.clahe) out = clahe(out, cfg.clahe_params);
  switch (cfg.filter) {
    case FrequencyFilter::lowpass: out = lowpass(out); break;
    case FrequencyFilter::highpass: out = highpass(out); break;
    case FrequencyFilter::none: break;
  }
  return out;
}

ConvNetConfig seeded_convnet(const ConvNetConfig& cfg, std::uint64_t root_seed) {
  ConvNetConfig out = cfg;
  for (std::size_t i = 0; i < out.layers.size(); ++i)
    out.layers[i].seed = derive_seed(root_seed, "convnet/layer/" + std::to_string(i));
  return out;
}

FeatureExtractor::FeatureExtractor(const ExtractorConfig& cfg, std::uint64_t root_seed)
    : cfg_(cfg) {
  if (cfg_.kind == ExtractorKind::convnet) {
    cfg_.convnet = seeded_convnet(cfg_.convnet, root_seed);
    net_.emplace(cfg_.convnet);
  }
}

FeatureExtractor::FeatureExtractor(const ExtractorConfig& cfg, ConvNet net)
    : cfg_(cfg), net_(std::move(net)) {
  require(cfg_.kind == ExtractorKind::convnet, "filter banks given for a non-convnet extractor");
  cfg_.convnet = net_->config();
}

FeatureVector FeatureExtractor::operator()(const Image& img) const {
  if (net_) return net_->features(img);
  return lbp_features(img, cfg_.lbp);
}

std::vector<FeatureVector> extract_rows(const FeatureExtractor& extractor, const Image& img,
                                        bool augment) {
  std::vector<FeatureVector> rows;
  if (!augment) {
    rows.push_back(extractor(img));
    return rows;
  }
  const PatchSet set = make_patches(img);
  rows.reserve(set.patches.size());
  for (const Image& patch : set.patches) rows.push_back(extractor(patch));
  return rows;
}

FeatureMatrix FittedTransform::apply(const FeatureMatrix& X) const {
  return project(pca, standardizer.apply(X));
}

FittedTransform fit_transform(const FeatureMatrix& train, const TransformConfig& cfg,
                              std::uint64_t root_seed) {
  FittedTransform t;
  t.standardizer = fit_standardizer(train);
  const FeatureMatrix standardized = t.standardizer.apply(train);
  const int k = pca_rank_for_fraction(cfg.pca_fraction, train.cols(), train.rows());
  t.pca = fit_pca_randomized(standardized, k, derive_seed(root_seed, "pca"), cfg.whiten);
  return t;
}

SvmParams resolve_svm_params(const ClassifierConfig& cfg, int pca_rank) {
  require(pca_rank >= 1, "PCA rank must be positive");
  SvmParams p;
  p.C = cfg.C;
  p.gamma = cfg.gamma.value_or(1.0 / pca_rank);
  p.tol = cfg.tol;
  p.max_iterations = cfg.max_iterations;
  return p;
}

FeatureVector TrainedPipeline::embed(const FeatureVector& features) const {
  return project(pca, standardizer.apply(features));
}

double TrainedPipeline::score(const Image& img) const {
  if (config.augment) return averaged_score(*this, img);
  return decision_score(svm, embed(extractor(preprocess(img, config.preprocess))));
}

double averaged_score(const TrainedPipeline& model, const Image& img) {
  require(model.config.augment, "averaged scoring needs a pipeline trained with augmentation");
  return averaged_score(preprocess(img, model.config.preprocess), [&](const Image& patch) {
    return decision_score(model.svm, model.embed(model.extractor(patch)));
  });
}

TrainedPipeline fit_final(const std::vector<LabeledImage>& data, const PipelineConfig& config,
                          unsigned threads) {
  require(data.size() >= 2, "training needs at least two images");
  FeatureExtractor extractor(config.extract, config.seed);

  std::vector<std::vector<FeatureVector>> per_image(data.size());
  parallel_for(data.size(), threads, [&](std::size_t i) {
    per_image[i] = extract_rows(extractor, preprocess(data[i].image, config.preprocess),
                                config.augment);
  });

  std::vector<FeatureVector> rows;
  std::vector<int> labels;
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (FeatureVector& row : per_image[i]) {
      rows.push_back(std::move(row));
      labels.push_back(to_sign(data[i].label));
    }
  }
  const FeatureMatrix X = stack_rows(rows);
  FittedTransform transform = fit_transform(X, config.transform, config.seed);
  const FeatureMatrix Z = transform.apply(X);
  SvmModel svm =
      train_smo(Z, labels, resolve_svm_params(config.classify, static_cast<int>(Z.cols())));
  return TrainedPipeline{config, std::move(extractor), std::move(transform.standardizer),
                         std::move(transform.pca), std::move(svm)};
}

}  // namespace livecheck
