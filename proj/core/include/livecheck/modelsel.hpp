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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "livecheck/pipeline.hpp"
#include "livecheck/types.hpp"

namespace livecheck {

/// Error rates with live as the positive class: fpr is the fraction of live
/// samples called fake, fnr the fraction of fake samples called live.
struct EvalReport {
  double fpr = 0.0;
  double fnr = 0.0;
  double ace = 0.0;
  std::size_t live_total = 0;
  std::size_t fake_total = 0;
  std::size_t live_wrong = 0;
  std::size_t fake_wrong = 0;
};

/// Average classification error. Throws when `truth` lacks a class.
EvalReport ace(std::span<const Label> predictions, std::span<const Label> truth);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified 5x2 cross-validation: five seeded shuffles, each halved per
/// class; each half is used once for training and once for testing.
/// Index lists are sorted.
std::vector<Split> five_by_two_splits(std::span<const Label> labels, std::uint64_t seed);

/// Candidate configurations per stage; candidates are the Cartesian product
/// enumerated with preprocess outermost and classify innermost.
struct GridSpec {
  std::vector<PreprocessConfig> preprocess{PreprocessConfig{}};
  std::vector<bool> augment{false};
  std::vector<ExtractorConfig> extract{ExtractorConfig{}};
  std::vector<TransformConfig> transform{TransformConfig{}};
  std::vector<ClassifierConfig> classify{ClassifierConfig{}};
  std::uint64_t seed = 0;

  std::size_t size() const noexcept;
  PipelineConfig candidate(std::size_t index) const;

  static GridSpec single(const PipelineConfig& config);
};

struct StageCounters {
  std::size_t preprocess = 0;
  std::size_t extract = 0;
  std::size_t transform = 0;
  std::size_t classify = 0;
  std::size_t cache_hits = 0;
};

struct GridSearchOptions {
  /// Memoize stage outputs across candidates sharing an upstream prefix.
  bool use_cache = true;
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  /// Optional on-disk tier, e.g. from LIVECHECK_CACHE_DIR.
  std::optional<std::filesystem::path> cache_dir;
  std::size_t disk_budget_bytes = std::size_t{4} << 30;
  unsigned threads = 0;
  /// Evaluate only the first N of the ten splits.
  std::size_t max_splits = 10;
};

struct CandidateReport {
  std::size_t index = 0;
  PipelineConfig config;
  std::vector<double> fold_ace;
  double mean_ace = 1.0;
  bool failed = false;
  std::string failure;
};

struct GridSearchResult {
  std::size_t best = 0;
  std::vector<CandidateReport> table;
  StageCounters counters;

  const CandidateReport& best_candidate() const { return table.at(best); }
};

/// Scores every candidate by mean validation ACE over the splits. A
/// candidate failing on a split scores ACE 1 there and is flagged. Ties go
/// to fewer PCA components, then smaller C, then enumeration order.
GridSearchResult grid_search(const std::vector<LabeledImage>& data, const GridSpec& grid,
                             const GridSearchOptions& options = {});

/// Tab-separated table, one row per candidate.
std::string format_report(const GridSearchResult& result);

}  // namespace livecheck
