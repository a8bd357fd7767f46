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

#include <cstddef>
#include <span>
#include <vector>

#include "livecheck/types.hpp"

namespace livecheck {

struct SvmParams {
  double C = 10.0;
  double gamma = 0.1;
  /// Stopping tolerance on the maximal KKT violation.
  double tol = 1e-3;
  std::size_t max_iterations = 10'000'000;
  /// Byte budget of the kernel-row cache.
  std::size_t cache_bytes = std::size_t{256} << 20;
  /// Record the dual objective after every iteration.
  bool track_objective = false;
};

struct SvmModel {
  /// One support vector per row.
  FeatureMatrix support_vectors;
  /// alpha_i * y_i for each support vector.
  Eigen::VectorXd coefficients;
  double bias = 0.0;
  double gamma = 1.0;
  double C = 1.0;
};

struct SmoResult {
  SvmModel model;
  /// Dual variables for every training row.
  std::vector<double> alphas;
  std::size_t iterations = 0;
  bool converged = false;
  /// Dual objective (to be maximized) per iteration when tracked.
  std::vector<double> objective_trace;
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

/// Trains a soft-margin RBF SVM by sequential minimal optimization with
/// second-order working-set selection. Labels must be -1 or +1 and both
/// classes must be present.
SmoResult solve_smo(const FeatureMatrix& X, std::span<const int> y, const SvmParams& params);
SvmModel train_smo(const FeatureMatrix& X, std::span<const int> y, const SvmParams& params);

/// sum_i coef_i k(sv_i, x) + bias.
double decision_score(const SvmModel& model, std::span<const double> x);
Eigen::VectorXd decision_scores(const SvmModel& model, const FeatureMatrix& X);

/// +1 when the score is >= 0, else -1.
int predict(const SvmModel& model, std::span<const double> x);

}  // namespace livecheck
