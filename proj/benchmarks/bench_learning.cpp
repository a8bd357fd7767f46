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

#include <random>

#include <benchmark/benchmark.h>

#include "livecheck/pipeline.hpp"
#include "livecheck/svm.hpp"
#include "livecheck/synthetic.hpp"
#include "livecheck/transform.hpp"

namespace {

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

void BM_RandomizedPca(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto X = gaussian_matrix(400, d, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(livecheck::fit_pca_randomized(X, d / 5, 11, true));
}
BENCHMARK(BM_RandomizedPca)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SvmTrain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::MatrixXd X = gaussian_matrix(n, 20, 4);
  std::vector<int> y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = i % 2 == 0 ? 1 : -1;
    X(i, 0) += 1.5 * y[i];
  }
  livecheck::SvmParams params;
  params.gamma = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(livecheck::train_smo(X, y, params));
}
BENCHMARK(BM_SvmTrain)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PipelinePredict(benchmark::State& state) {
  const auto data = livecheck::make_texture_dataset(40, 9);
  livecheck::PipelineConfig config;
  config.seed = 1;
  config.augment = state.range(0) != 0;
  config.extract.lbp = {livecheck::LbpVariant::uniform, 2, 2};
  const auto model = livecheck::fit_final(data, config, 1);
  for (auto _ : state) benchmark::DoNotOptimize(model.score(data.front().image));
}
BENCHMARK(BM_PipelinePredict)->Arg(0)->Arg(1);

}  // namespace
