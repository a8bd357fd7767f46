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

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "livecheck/error.hpp"
#include "livecheck/modelsel.hpp"
#include "livecheck/synthetic.hpp"
#include "support/datasets.hpp"

namespace livecheck {
namespace {

std::vector<Label> labels_of(std::initializer_list<int> signs) {
  std::vector<Label> out;
  for (int s : signs) out.push_back(s > 0 ? Label::live : Label::fake);
  return out;
}

TEST(Ace, PerfectPredictions) {
  const auto truth = labels_of({1, 1, -1, -1});
  const EvalReport r = ace(truth, truth);
  EXPECT_EQ(r.fpr, 0.0);
  EXPECT_EQ(r.fnr, 0.0);
  EXPECT_EQ(r.ace, 0.0);
}

TEST(Ace, AveragesTheTwoRates) {
  // 10 live with 1 rejected, 10 fake with 2 accepted.
  std::vector<Label> truth, pred;
  for (int i = 0; i < 10; ++i) {
    truth.push_back(Label::live);
    pred.push_back(i == 0 ? Label::fake : Label::live);
  }
  for (int i = 0; i < 10; ++i) {
    truth.push_back(Label::fake);
    pred.push_back(i < 2 ? Label::live : Label::fake);
  }
  const EvalReport r = ace(pred, truth);
  EXPECT_EQ(r.fpr, 0.1);
  EXPECT_EQ(r.fnr, 0.2);
  EXPECT_EQ(r.ace, (0.1 + 0.2) / 2.0);
  EXPECT_EQ(r.live_wrong, 1u);
  EXPECT_EQ(r.fake_wrong, 2u);
}

TEST(Ace, AllLivePredictor) {
  const auto truth = labels_of({1, -1, 1, -1});
  const EvalReport r = ace(labels_of({1, 1, 1, 1}), truth);
  EXPECT_EQ(r.fpr, 0.0);
  EXPECT_EQ(r.fnr, 1.0);
  EXPECT_EQ(r.ace, 0.5);
}

TEST(Ace, Errors) {
  EXPECT_THROW(ace(labels_of({1, 1}), labels_of({1, 1})), Error);
  EXPECT_THROW(ace(labels_of({1}), labels_of({1, -1})), Error);
}

TEST(Splits, FiveByTwoStructure) {
  const auto labels = labels_of({1, -1, 1, -1, 1, -1, 1, -1, 1, -1});
  const auto splits = five_by_two_splits(labels, 3);
  ASSERT_EQ(splits.size(), 10u);
  for (std::size_t r = 0; r < 5; ++r) {
    const Split& a = splits[2 * r];
    const Split& b = splits[2 * r + 1];
    EXPECT_EQ(a.train, b.test);
    EXPECT_EQ(a.test, b.train);
    for (const Split& s : {a, b}) {
      EXPECT_EQ(s.train.size(), 5u);
      EXPECT_EQ(s.test.size(), 5u);
      std::set<std::size_t> all(s.train.begin(), s.train.end());
      all.insert(s.test.begin(), s.test.end());
      EXPECT_EQ(all.size(), 10u);
      EXPECT_TRUE(std::is_sorted(s.train.begin(), s.train.end()));
    }
  }
  EXPECT_NE(splits[0].train, splits[2].train);
}

TEST(Splits, DeterministicPerSeed) {
  const auto labels = labels_of({1, 1, -1, 1, -1, -1, 1, -1, 1});
  const auto a = five_by_two_splits(labels, 9);
  const auto b = five_by_two_splits(labels, 9);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].train, b[i].train);
  const auto c = five_by_two_splits(labels, 10);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].train != c[i].train;
  EXPECT_TRUE(differs);
}

TEST(Splits, StratifiedFolds) {
  std::vector<Label> labels;
  for (int i = 0; i < 17; ++i) labels.push_back(i < 7 ? Label::live : Label::fake);
  for (const Split& s : five_by_two_splits(labels, 1)) {
    for (const auto* fold : {&s.train, &s.test}) {
      const auto live = std::count_if(fold->begin(), fold->end(),
                                      [&](std::size_t i) { return labels[i] == Label::live; });
      const auto fake = static_cast<long>(fold->size()) - live;
      EXPECT_LE(std::abs(2 * live - 7), 1 + 0);  // within one of 3.5
      EXPECT_LE(std::abs(2 * fake - 10), 2);     // within one of 5
    }
  }
}

TEST(GridSpec, EnumerationOrder) {
  GridSpec g;
  g.preprocess = {PreprocessConfig{}, PreprocessConfig{0.5}};
  g.classify = {ClassifierConfig{1.0}, ClassifierConfig{2.0}, ClassifierConfig{3.0}};
  g.seed = 4;
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g.candidate(0).classify.C, 1.0);
  EXPECT_EQ(g.candidate(2).classify.C, 3.0);
  EXPECT_EQ(g.candidate(3).preprocess.scale, 0.5);
  EXPECT_EQ(g.candidate(3).seed, 4u);
  EXPECT_THROW(g.candidate(6), Error);
}

GridSpec three_by_four() {
  GridSpec g;
  g.seed = 5;
  g.extract.clear();
  for (int blocks : {1, 2, 3}) {
    ExtractorConfig e;
    e.lbp = {LbpVariant::uniform, blocks, blocks};
    g.extract.push_back(e);
  }
  g.classify.clear();
  for (double C : {0.5, 1.0, 5.0, 20.0}) g.classify.push_back(ClassifierConfig{C});
  return g;
}

TEST(GridSearch, UpstreamStagesRunOncePerDistinctPrefix) {
  const auto data = make_texture_dataset(12, 1, {32});
  GridSearchOptions opts;
  opts.max_splits = 1;
  opts.threads = 1;
  const auto r = grid_search(data, three_by_four(), opts);
  EXPECT_EQ(r.counters.preprocess, 1u);
  EXPECT_EQ(r.counters.extract, 3u);
  EXPECT_EQ(r.counters.transform, 3u);
  EXPECT_EQ(r.counters.classify, 12u);
  EXPECT_EQ(r.table.size(), 12u);
}

TEST(GridSearch, CachedAndUncachedReportsIdentical) {
  const auto data = make_texture_dataset(12, 2, {32});
  GridSearchOptions cached;
  cached.max_splits = 2;
  GridSearchOptions uncached = cached;
  uncached.use_cache = false;
  const auto a = grid_search(data, three_by_four(), cached);
  const auto b = grid_search(data, three_by_four(), uncached);
  EXPECT_EQ(format_report(a), format_report(b));
  EXPECT_EQ(b.counters.extract, 12u * 2u);
}

TEST(GridSearch, TinyMemoryBudgetStillCorrect) {
  const auto data = make_texture_dataset(10, 3, {32});
  GridSearchOptions normal;
  normal.max_splits = 2;
  GridSearchOptions tiny = normal;
  tiny.memory_budget_bytes = 1;
  EXPECT_EQ(format_report(grid_search(data, three_by_four(), normal)),
            format_report(grid_search(data, three_by_four(), tiny)));
}

TEST(GridSearch, DiskTierServesSecondRun) {
  const auto dir = std::filesystem::temp_directory_path() / "livecheck_modelsel_disk_cache";
  std::filesystem::remove_all(dir);
  const auto data = make_texture_dataset(10, 4, {32});
  GridSearchOptions opts;
  opts.max_splits = 1;
  opts.cache_dir = dir;
  const auto first = grid_search(data, three_by_four(), opts);
  const auto second = grid_search(data, three_by_four(), opts);
  EXPECT_EQ(first.counters.extract, 3u);
  EXPECT_EQ(second.counters.preprocess, 0u);
  EXPECT_EQ(second.counters.extract, 0u);
  EXPECT_GT(second.counters.cache_hits, 0u);
  EXPECT_EQ(format_report(first), format_report(second));
  std::filesystem::remove_all(dir);
}

TEST(GridSearch, SingleCandidate) {
  const auto data = make_texture_dataset(10, 5, {32});
  PipelineConfig cfg;
  cfg.seed = 3;
  const auto r = grid_search(data, GridSpec::single(cfg));
  ASSERT_EQ(r.table.size(), 1u);
  EXPECT_EQ(r.best, 0u);
  EXPECT_EQ(r.best_candidate().config, cfg);
  EXPECT_EQ(r.best_candidate().fold_ace.size(), 10u);
  const double mean = std::accumulate(r.table[0].fold_ace.begin(), r.table[0].fold_ace.end(), 0.0) / 10.0;
  EXPECT_EQ(r.best_candidate().mean_ace, mean);
}

TEST(GridSearch, PlantedCandidateWins) {
  const auto data = testdata::checkerboard_set(20, 6);
  GridSpec g;
  g.seed = 7;
  g.preprocess = {PreprocessConfig{0.5}, PreprocessConfig{1.0}};
  g.extract.front().lbp = {LbpVariant::uniform, 1, 1};
  const auto r = grid_search(data, g);
  EXPECT_EQ(r.best, 1u);
  EXPECT_LE(r.table[1].mean_ace, 0.05);
  EXPECT_GE(r.table[0].mean_ace, 0.25);
}

TEST(GridSearch, FailingCandidateIsFlagged) {
  const auto data = make_texture_dataset(8, 8, {16});
  GridSpec g;
  g.seed = 1;
  ExtractorConfig too_deep;
  too_deep.kind = ExtractorKind::convnet;
  too_deep.convnet.layers = {{2, 5, 3, 3, 1, 0}, {2, 5, 3, 3, 1, 0}};
  g.extract = {ExtractorConfig{}, too_deep};
  const auto r = grid_search(data, g);
  EXPECT_FALSE(r.table[0].failed);
  EXPECT_TRUE(r.table[1].failed);
  EXPECT_EQ(r.table[1].mean_ace, 1.0);
  EXPECT_FALSE(r.table[1].failure.empty());
  EXPECT_EQ(r.best, 0u);
}

TEST(GridSearch, TieBreaksOnFewerComponentsThenSmallerC) {
  const auto data = make_texture_dataset(30, 9, {32});
  GridSpec g;
  g.seed = 2;
  g.extract.front().lbp = {LbpVariant::uniform, 2, 2};
  // 40 features: both fractions round to four components.
  g.transform = {TransformConfig{0.11}, TransformConfig{0.1}};
  g.classify = {ClassifierConfig{10.0}, ClassifierConfig{5.0}};
  const auto r = grid_search(data, g);
  for (const auto& row : r.table) ASSERT_EQ(row.mean_ace, r.table[0].mean_ace);
  EXPECT_EQ(r.best, 3u);
  EXPECT_EQ(r.best_candidate().config.transform.pca_fraction, 0.1);
  EXPECT_EQ(r.best_candidate().config.classify.C, 5.0);
}

}  // namespace
}  // namespace livecheck
