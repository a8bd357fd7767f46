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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "livecheck/modelsel.hpp"

namespace livecheck::cli {

struct TrainOptions {
  std::filesystem::path config;
  std::filesystem::path data;
  std::filesystem::path out;
  /// Validation table destination; required by gridsearch.
  std::optional<std::filesystem::path> report;
  bool skip_unreadable = false;
};

struct PredictOptions {
  std::filesystem::path model;
  std::vector<std::filesystem::path> images;
  /// Per-image wall time to the error stream. Images are then scored one
  /// at a time so each measurement is single-core latency.
  bool timing = false;
  unsigned threads = 0;
};

struct EvaluateOptions {
  std::filesystem::path model;
  std::filesystem::path data;
  bool skip_unreadable = false;
  unsigned threads = 0;
};

struct SynthOptions {
  std::filesystem::path out;
  std::size_t per_class = 100;
  std::uint64_t seed = 1;
  int size = 64;
};

/// Fits the configured pipeline (grid-searching first when the config lists
/// several candidates) and writes the model file.
int cmd_train(const TrainOptions& options, std::ostream& out, std::ostream& err);
/// Grid search over the config, report file, then a final fit of the winner.
int cmd_gridsearch(const TrainOptions& options, std::ostream& out, std::ostream& err);
/// One "path score label" line per image, in argument order.
int cmd_predict(const PredictOptions& options, std::ostream& out, std::ostream& err);
/// FPR, FNR and ACE of the model on a labelled directory.
int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err);
/// Writes the synthetic ridge-texture data set in the live/ fake/ layout.
int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

std::string format_prediction(const std::string& path, double score);
std::string format_evaluation(const EvalReport& report);

/// Argument parsing and dispatch; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace livecheck::cli
