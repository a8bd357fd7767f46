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

#include <Eigen/Core>
#include <string_view>
#include <vector>

#include "livecheck/image.hpp"

namespace livecheck {

using FeatureVector = std::vector<double>;
/// One sample per row.
using FeatureMatrix = Eigen::MatrixXd;

/// Class label. Live samples are the positive class (+1) throughout.
enum class Label : int { fake = -1, live = +1 };

constexpr int to_sign(Label label) noexcept { return static_cast<int>(label); }
constexpr Label from_score(double score) noexcept {
  return score >= 0.0 ? Label::live : Label::fake;
}
constexpr std::string_view label_name(Label label) noexcept {
  return label == Label::live ? "live" : "fake";
}

struct LabeledImage {
  Image image;
  Label label;
};

/// Copies equally sized vectors into the rows of a matrix.
FeatureMatrix stack_rows(const std::vector<FeatureVector>& rows);

}  // namespace livecheck
