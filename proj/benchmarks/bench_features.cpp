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

#include "livecheck/convnet.hpp"
#include "livecheck/imageproc.hpp"
#include "livecheck/lbp.hpp"
#include "livecheck/synthetic.hpp"

namespace {

livecheck::Image texture(int size) {
  std::mt19937_64 rng(5);
  livecheck::TextureParams params;
  params.size = size;
  return livecheck::synth_ridge_texture(rng, params);
}

void BM_LbpFeatures(benchmark::State& state) {
  const auto img = texture(static_cast<int>(state.range(0)));
  const livecheck::LbpConfig cfg{livecheck::LbpVariant::uniform, 2, 2};
  for (auto _ : state) benchmark::DoNotOptimize(livecheck::lbp_features(img, cfg));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LbpFeatures)->Arg(64)->Arg(256);

void BM_ConvnetFeatures(benchmark::State& state) {
  const auto img = texture(static_cast<int>(state.range(0)));
  livecheck::ConvNetConfig cfg;
  cfg.layers = {{16, 5, 3, 3, 9, 1}, {32, 5, 3, 3, 9, 2}};
  const livecheck::ConvNet net(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(net.features(img));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ConvnetFeatures)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Clahe(benchmark::State& state) {
  const auto img = texture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(livecheck::clahe(img));
}
BENCHMARK(BM_Clahe)->Arg(64)->Arg(256);

void BM_Lowpass(benchmark::State& state) {
  const auto img = texture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(livecheck::lowpass(img));
}
BENCHMARK(BM_Lowpass)->Arg(64)->Arg(256);

}  // namespace
