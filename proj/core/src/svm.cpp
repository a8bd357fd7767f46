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

#include "livecheck/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>

#include "livecheck/error.hpp"

namespace livecheck {
namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// LRU cache of rows of the training Gram matrix.
class KernelRows {
 public:
  KernelRows(const FeatureMatrix& X, double gamma, std::size_t budget_bytes)
      : X_(X), gamma_(gamma), slots_(X.rows(), rows_.end()) {
    const std::size_t row_bytes = static_cast<std::size_t>(X.rows()) * sizeof(double);
    capacity_ = std::max<std::size_t>(2, budget_bytes / std::max<std::size_t>(row_bytes, 1));
  }

  const std::vector<double>& row(Eigen::Index i) {
    auto& slot = slots_[static_cast<std::size_t>(i)];
    if (slot != rows_.end()) {
      rows_.splice(rows_.begin(), rows_, slot);
      return slot->second;
    }
    if (rows_.size() >= capacity_) {
      slots_[static_cast<std::size_t>(rows_.back().first)] = rows_.end();
      rows_.pop_back();
    }
    std::vector<double> values(static_cast<std::size_t>(X_.rows()));
    for (Eigen::Index j = 0; j < X_.rows(); ++j)
      values[static_cast<std::size_t>(j)] =
          std::exp(-gamma_ * (X_.row(i) - X_.row(j)).squaredNorm());
    rows_.emplace_front(i, std::move(values));
    slot = rows_.begin();
    return slot->second;
  }

 private:
  using Entry = std::pair<Eigen::Index, std::vector<double>>;
  const FeatureMatrix& X_;
  double gamma_;
  std::size_t capacity_;
  std::list<Entry> rows_;
  std::vector<std::list<Entry>::iterator> slots_;
};

void validate(const FeatureMatrix& X, std::span<const int> y, const SvmParams& p) {
  require(p.C > 0.0 && p.gamma > 0.0 && p.tol > 0.0, "SVM parameters must be positive");
  require(X.rows() >= 2, "SVM training needs at least two samples");
  require(static_cast<Eigen::Index>(y.size()) == X.rows(), "label count does not match samples");
  require(X.allFinite(), "non-finite feature value");
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    require(label == 1 || label == -1, "SVM labels must be -1 or +1");
    (label > 0 ? has_pos : has_neg) = true;
  }
  require(has_pos && has_neg, "SVM training needs both classes");
}

}  // namespace

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  require(a.size() == b.size(), "kernel arguments differ in length");
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

SmoResult solve_smo(const FeatureMatrix& X, std::span<const int> y, const SvmParams& params) {
  validate(X, y, params);
  const auto n = static_cast<std::size_t>(X.rows());
  const double C = params.C;
  KernelRows kernel(X, params.gamma, params.cache_bytes);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // Q alpha - e
  auto is_upper = [&](std::size_t t) { return alpha[t] >= C; };
  auto is_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  SmoResult result;
  while (result.iterations < params.max_iterations) {
    // Second-order working-set selection.
    double gmax = -kInf;
    std::ptrdiff_t i = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1) {
        if (!is_upper(t) && -grad[t] >= gmax) gmax = -grad[t], i = static_cast<std::ptrdiff_t>(t);
      } else {
        if (!is_lower(t) && grad[t] >= gmax) gmax = grad[t], i = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (i < 0) {
      result.converged = true;
      break;
    }
    const std::vector<double>& k_i = kernel.row(i);
    double gmax2 = -kInf;
    double best_obj = kInf;
    std::ptrdiff_t j = -1;
    for (std::size_t t = 0; t < n; ++t) {
      const double quad = std::max(2.0 - 2.0 * k_i[t], kTau);
      if (y[t] == 1) {
        if (!is_lower(t)) {
          const double diff = gmax + grad[t];
          gmax2 = std::max(gmax2, grad[t]);
          if (diff > 0.0 && -(diff * diff) / quad <= best_obj)
            best_obj = -(diff * diff) / quad, j = static_cast<std::ptrdiff_t>(t);
        }
      } else {
        if (!is_upper(t)) {
          const double diff = gmax - grad[t];
          gmax2 = std::max(gmax2, -grad[t]);
          if (diff > 0.0 && -(diff * diff) / quad <= best_obj)
            best_obj = -(diff * diff) / quad, j = static_cast<std::ptrdiff_t>(t);
        }
      }
    }
    if (gmax + gmax2 < params.tol || j < 0) {
      result.converged = true;
      break;
    }
    ++result.iterations;

    const std::vector<double>& k_i_row = kernel.row(i);
    const std::vector<double>& k_j = kernel.row(j);
    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
    const double old_ai = alpha[ui], old_aj = alpha[uj];
    const double k_ij = k_i_row[uj];
    double& ai = alpha[ui];
    double& aj = alpha[uj];
    if (y[ui] != y[uj]) {
      const double quad = std::max(2.0 + 2.0 * (-k_ij), kTau);
      const double delta = (-grad[ui] - grad[uj]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) aj = 0.0, ai = diff;
      } else {
        if (ai < 0.0) ai = 0.0, aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > C) ai = C, aj = C - diff;
      } else {
        if (aj > C) aj = C, ai = C + diff;
      }
    } else {
      const double quad = std::max(2.0 - 2.0 * k_ij, kTau);
      const double delta = (grad[ui] - grad[uj]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > C) {
        if (ai > C) ai = C, aj = sum - C;
      } else {
        if (aj < 0.0) aj = 0.0, ai = sum;
      }
      if (sum > C) {
        if (aj > C) aj = C, ai = sum - C;
      } else {
        if (ai < 0.0) ai = 0.0, aj = sum;
      }
    }
    const double dai = ai - old_ai, daj = aj - old_aj;
    for (std::size_t t = 0; t < n; ++t)
      grad[t] += y[t] * (y[ui] * k_i_row[t] * dai + y[uj] * k_j[t] * daj);

    if (params.track_objective) {
      double f = 0.0;
      for (std::size_t t = 0; t < n; ++t) f += alpha[t] * (grad[t] - 1.0);
      result.objective_trace.push_back(-0.5 * f);
    }
  }

  // Offset from free vectors, else the midpoint of the feasible interval.
  double ub = kInf, lb = -kInf, free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (is_upper(t)) {
      if (y[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (is_lower(t)) {
      if (y[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;

  std::vector<Eigen::Index> support;
  for (std::size_t t = 0; t < n; ++t)
    if (alpha[t] > 0.0) support.push_back(static_cast<Eigen::Index>(t));
  SvmModel& model = result.model;
  model.support_vectors.resize(static_cast<Eigen::Index>(support.size()), X.cols());
  model.coefficients.resize(static_cast<Eigen::Index>(support.size()));
  for (std::size_t s = 0; s < support.size(); ++s) {
    const auto row = support[s];
    model.support_vectors.row(static_cast<Eigen::Index>(s)) = X.row(row);
    model.coefficients[static_cast<Eigen::Index>(s)] = alpha[static_cast<std::size_t>(row)] * y[row];
  }
  model.bias = -rho;
  model.gamma = params.gamma;
  model.C = C;
  result.alphas = std::move(alpha);
  return result;
}

SvmModel train_smo(const FeatureMatrix& X, std::span<const int> y, const SvmParams& params) {
  return solve_smo(X, y, params).model;
}

double decision_score(const SvmModel& model, std::span<const double> x) {
  require(static_cast<Eigen::Index>(x.size()) == model.support_vectors.cols(),
          "feature length does not match SVM model");
  const Eigen::Map<const Eigen::RowVectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  double score = model.bias;
  for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s)
    score += model.coefficients[s] *
             std::exp(-model.gamma * (model.support_vectors.row(s) - v).squaredNorm());
  return score;
}

Eigen::VectorXd decision_scores(const SvmModel& model, const FeatureMatrix& X) {
  Eigen::VectorXd scores(X.rows());
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    const Eigen::RowVectorXd row = X.row(r);
    scores[r] = decision_score(model, std::span<const double>(row.data(), static_cast<std::size_t>(row.size())));
  }
  return scores;
}

int predict(const SvmModel& model, std::span<const double> x) {
  return decision_score(model, x) >= 0.0 ? 1 : -1;
}

}  // namespace livecheck
