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
#include <span>

#include "livecheck/types.hpp"

namespace livecheck {

struct Standardizer {
  Eigen::VectorXd means;
  /// Population standard deviations.
  Eigen::VectorXd stds;

  FeatureVector apply(std::span<const double> x) const;
  FeatureMatrix apply(const FeatureMatrix& X) const;
};

/// Floor applied to a per-dimension std before dividing.
inline constexpr double kStdFloor = 1e-12;

Standardizer fit_standardizer(const FeatureMatrix& X);

struct PcaModel {
  /// Training mean subtracted before rotation.
  Eigen::VectorXd mean;
  /// k x d, orthonormal rows sorted by decreasing variance.
  Eigen::MatrixXd components;
  /// Sample variance (n - 1 denominator) of each rotated training component.
  Eigen::VectorXd component_variances;
  bool whiten = true;
  double epsilon = 1e-8;

  Eigen::Index dims() const noexcept { return components.cols(); }
  Eigen::Index rank() const noexcept { return components.rows(); }
};

struct RandomizedPcaParams {
  int oversampling = 10;
  int power_iterations = 2;
};

/// Halko-Martinsson-Tropp range finder followed by an SVD of the small
/// projected matrix. Requires 1 <= k <= min(n - 1, d).
PcaModel fit_pca_randomized(const FeatureMatrix& X, int k, std::uint64_t seed,
                            bool whiten = true, const RandomizedPcaParams& params = {});

/// components * (x - mean), each coordinate divided by sqrt(var + epsilon)
/// when whitening.
FeatureVector project(const PcaModel& model, std::span<const double> x);
FeatureMatrix project(const PcaModel& model, const FeatureMatrix& X);

/// Component count for a fraction of the input dimension, clamped to
/// [1, min(n - 1, d)].
int pca_rank_for_fraction(double fraction, Eigen::Index dims, Eigen::Index samples);

}  // namespace livecheck
