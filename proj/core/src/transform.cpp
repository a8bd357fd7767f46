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

#include "livecheck/transform.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "livecheck/error.hpp"

namespace livecheck {
namespace {

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

}  // namespace

Standardizer fit_standardizer(const FeatureMatrix& X) {
  require(X.rows() >= 2, "standardization needs at least two samples");
  Standardizer s;
  s.means = X.colwise().mean().transpose();
  s.stds = ((X.rowwise() - s.means.transpose()).array().square().colwise().mean())
               .sqrt()
               .transpose();
  return s;
}

FeatureVector Standardizer::apply(std::span<const double> x) const {
  require(static_cast<Eigen::Index>(x.size()) == means.size(),
          "feature length does not match standardizer");
  FeatureVector out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    // Constant training dimensions carry no information and map to zero.
    out[j] = stds[jj] > kStdFloor ? (x[j] - means[jj]) / stds[jj] : 0.0;
  }
  return out;
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& X) const {
  require(X.cols() == means.size(), "feature length does not match standardizer");
  FeatureMatrix out(X.rows(), X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    if (stds[j] > kStdFloor)
      out.col(j) = (X.col(j).array() - means[j]) / stds[j];
    else
      out.col(j).setZero();
  }
  return out;
}

PcaModel fit_pca_randomized(const FeatureMatrix& X, int k, std::uint64_t seed, bool whiten,
                            const RandomizedPcaParams& params) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  require(n >= 2, "PCA needs at least two samples");
  require(k >= 1 && k <= std::min(n - 1, d), "PCA component count out of range");

  PcaModel model;
  model.whiten = whiten;
  model.mean = X.colwise().mean().transpose();
  const Eigen::MatrixXd centered = X.rowwise() - model.mean.transpose();

  const Eigen::Index sketch = std::min<Eigen::Index>(k + params.oversampling, std::min(n, d));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd omega(d, sketch);
  for (Eigen::Index c = 0; c < sketch; ++c)
    for (Eigen::Index r = 0; r < d; ++r) omega(r, c) = normal(rng);

  Eigen::MatrixXd q = orthonormal_basis(centered * omega);
  for (int it = 0; it < params.power_iterations; ++it) {
    const Eigen::MatrixXd z = orthonormal_basis(centered.transpose() * q);
    q = orthonormal_basis(centered * z);
  }

  const Eigen::MatrixXd small = q.transpose() * centered;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(small, Eigen::ComputeThinV);
  model.components = svd.matrixV().leftCols(k).transpose();
  model.component_variances =
      svd.singularValues().head(k).array().square() / static_cast<double>(n - 1);

  for (Eigen::Index i = 0; i < model.components.rows(); ++i) {
    Eigen::Index argmax = 0;
    model.components.row(i).cwiseAbs().maxCoeff(&argmax);
    if (model.components(i, argmax) < 0.0) model.components.row(i) *= -1.0;
  }
  return model;
}

FeatureVector project(const PcaModel& model, std::span<const double> x) {
  require(static_cast<Eigen::Index>(x.size()) == model.dims(),
          "feature length does not match PCA model");
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd y = model.components * (v - model.mean);
  if (model.whiten)
    y.array() /= (model.component_variances.array() + model.epsilon).sqrt();
  return FeatureVector(y.data(), y.data() + y.size());
}

FeatureMatrix project(const PcaModel& model, const FeatureMatrix& X) {
  require(X.cols() == model.dims(), "feature length does not match PCA model");
  FeatureMatrix y = (X.rowwise() - model.mean.transpose()) * model.components.transpose();
  if (model.whiten) {
    const Eigen::RowVectorXd scale =
        (model.component_variances.array() + model.epsilon).sqrt().inverse().transpose();
    y = y.array().rowwise() * scale.array();
  }
  return y;
}

int pca_rank_for_fraction(double fraction, Eigen::Index dims, Eigen::Index samples) {
  require(fraction > 0.0 && fraction <= 1.0, "PCA fraction must lie in (0, 1]");
  require(samples >= 2 && dims >= 1, "PCA needs at least two samples");
  const auto upper = std::min<Eigen::Index>(samples - 1, dims);
  const auto k = static_cast<Eigen::Index>(std::lround(fraction * static_cast<double>(dims)));
  return static_cast<int>(std::clamp<Eigen::Index>(k, 1, upper));
}

}  // namespace livecheck
