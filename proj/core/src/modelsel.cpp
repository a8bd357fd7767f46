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

#include "livecheck/modelsel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "livecheck/augment.hpp"
#include "livecheck/digest.hpp"
#include "livecheck/error.hpp"
#include "livecheck/parallel.hpp"
#include "livecheck/seed.hpp"
#include "livecheck/stage_cache.hpp"

namespace livecheck {

EvalReport ace(std::span<const Label> predictions, std::span<const Label> truth) {
  require(predictions.size() == truth.size(), "prediction and truth counts differ");
  EvalReport r;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool wrong = predictions[i] != truth[i];
    if (truth[i] == Label::live) {
      ++r.live_total;
      r.live_wrong += wrong;
    } else {
      ++r.fake_total;
      r.fake_wrong += wrong;
    }
  }
  require(r.live_total > 0 && r.fake_total > 0, "ACE needs both live and fake samples");
  r.fpr = static_cast<double>(r.live_wrong) / static_cast<double>(r.live_total);
  r.fnr = static_cast<double>(r.fake_wrong) / static_cast<double>(r.fake_total);
  r.ace = (r.fpr + r.fnr) / 2.0;
  return r;
}

std::vector<Split> five_by_two_splits(std::span<const Label> labels, std::uint64_t seed) {
  require(labels.size() >= 4, "5x2 cross-validation needs at least four samples");
  std::vector<std::size_t> live, fake;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (labels[i] == Label::live ? live : fake).push_back(i);
  require(live.size() >= 2 && fake.size() >= 2, "class too small to stratify");

  std::vector<Split> splits;
  for (int rep = 0; rep < 5; ++rep) {
    std::mt19937_64 rng(derive_seed(seed, "cv/repetition/" + std::to_string(rep)));
    std::vector<std::size_t> first, second;
    bool extra_to_first = true;
    for (std::vector<std::size_t> members : {live, fake}) {
      std::shuffle(members.begin(), members.end(), rng);
      const std::size_t half = members.size() / 2 + (extra_to_first ? members.size() % 2 : 0);
      first.insert(first.end(), members.begin(), members.begin() + static_cast<long>(half));
      second.insert(second.end(), members.begin() + static_cast<long>(half), members.end());
      // Odd classes alternate which fold receives the extra sample.
      if (members.size() % 2 == 1) extra_to_first = !extra_to_first;
    }
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    splits.push_back({first, second});
    splits.push_back({second, first});
  }
  return splits;
}

std::size_t GridSpec::size() const noexcept {
  return preprocess.size() * augment.size() * extract.size() * transform.size() *
         classify.size();
}

PipelineConfig GridSpec::candidate(std::size_t index) const {
  require(index < size(), "grid candidate index out of range");
  PipelineConfig c;
  c.seed = seed;
  c.classify = classify[index % classify.size()];
  index /= classify.size();
  c.transform = transform[index % transform.size()];
  index /= transform.size();
  c.extract = extract[index % extract.size()];
  index /= extract.size();
  c.augment = augment[index % augment.size()];
  index /= augment.size();
  c.preprocess = preprocess[index];
  return c;
}

GridSpec GridSpec::single(const PipelineConfig& config) {
  GridSpec g;
  g.preprocess = {config.preprocess};
  g.augment = {config.augment};
  g.extract = {config.extract};
  g.transform = {config.transform};
  g.classify = {config.classify};
  g.seed = config.seed;
  return g;
}

namespace {

// Keys of every stage a candidate depends on for one split.
struct StageKeys {
  std::string preprocess;
  std::string extract;
  std::string transform;
};

class Search {
 public:
  Search(const std::vector<LabeledImage>& data, const GridSpec& grid,
         std::vector<Split> splits, StageCache* cache, bool memoize)
      : data_(data), grid_(grid), splits_(std::move(splits)), cache_(cache), memoize_(memoize) {
    Sha256 h;
    h.update(std::string_view("dataset"));
    for (const LabeledImage& s : data_) {
      h.update(static_cast<std::uint64_t>(s.image.width()));
      h.update(static_cast<std::uint64_t>(s.image.height()));
      for (double v : s.image.pixels()) h.update(v);
      h.update(static_cast<std::uint64_t>(to_sign(s.label) + 1));
    }
    data_digest_ = to_hex(h.finish());
    for (const Split& split : splits_) {
      Sha256 sh;
      sh.update(std::string_view(data_digest_));
      sh.update(static_cast<std::uint64_t>(split.train.size()));
      for (auto i : split.train) sh.update(static_cast<std::uint64_t>(i));
      sh.update(static_cast<std::uint64_t>(split.test.size()));
      for (auto i : split.test) sh.update(static_cast<std::uint64_t>(i));
      split_digests_.push_back(to_hex(sh.finish()));
    }
  }

  StageKeys keys(const PipelineConfig& c, std::size_t split) const {
    StageKeys k;
    k.preprocess = digest({"preprocess", c.preprocess.canonical(), data_digest_});
    k.extract = digest({"extract", c.extract.canonical(), c.augment ? "augment" : "plain",
                        std::to_string(c.seed), k.preprocess});
    k.transform = digest({"transform", c.transform.canonical(), std::to_string(c.seed),
                          k.extract, split_digests_[split]});
    return k;
  }

  // Preprocessed images, one matrix each.
  std::shared_ptr<const StageOutput> preprocessed(const PipelineConfig& c, const StageKeys& k) {
    return obtain(k.preprocess, executions_.preprocess, [&] {
      StageOutput out;
      out.reserve(data_.size());
      for (const LabeledImage& s : data_) {
        const Image img = preprocess(s.image, c.preprocess);
        Eigen::MatrixXd m(img.height(), img.width());
        for (int r = 0; r < img.height(); ++r)
          for (int col = 0; col < img.width(); ++col) m(r, col) = img(r, col);
        out.push_back(std::move(m));
      }
      return out;
    });
  }

  // One matrix of feature rows for all images, rows_per_image rows each.
  std::shared_ptr<const StageOutput> features(const PipelineConfig& c, const StageKeys& k) {
    return obtain(k.extract, executions_.extract, [&] {
      const auto images = preprocessed(c, k);
      const FeatureExtractor extractor(c.extract, c.seed);
      std::vector<FeatureVector> rows;
      for (const Eigen::MatrixXd& m : *images) {
        Image img(static_cast<int>(m.cols()), static_cast<int>(m.rows()));
        for (int r = 0; r < img.height(); ++r)
          for (int col = 0; col < img.width(); ++col) img(r, col) = m(r, col);
        for (FeatureVector& row : extract_rows(extractor, img, c.augment))
          rows.push_back(std::move(row));
      }
      return StageOutput{stack_rows(rows)};
    });
  }

  // [train rows, test rows] after standardization, PCA and whitening.
  std::shared_ptr<const StageOutput> transformed(const PipelineConfig& c, const StageKeys& k,
                                                 std::size_t split) {
    return obtain(k.transform, executions_.transform, [&] {
      const auto feats = features(c, k);
      const FeatureMatrix& all = feats->front();
      const FeatureMatrix train = gather(all, splits_[split].train, rows_per_image(c));
      const FeatureMatrix test = gather(all, splits_[split].test, rows_per_image(c));
      const FittedTransform t = fit_transform(train, c.transform, c.seed);
      return StageOutput{t.apply(train), t.apply(test)};
    });
  }

  double classify(const PipelineConfig& c, std::size_t split) {
    const StageKeys k = keys(c, split);
    const auto z = transformed(c, k, split);
    ++executions_.classify;
    const Split& s = splits_[split];
    const int per = rows_per_image(c);
    std::vector<int> y;
    y.reserve(s.train.size() * per);
    for (auto i : s.train)
      for (int p = 0; p < per; ++p) y.push_back(to_sign(data_[i].label));
    const FeatureMatrix& train = (*z)[0];
    const FeatureMatrix& test = (*z)[1];
    const SvmModel model =
        train_smo(train, y, resolve_svm_params(c.classify, static_cast<int>(train.cols())));
    const Eigen::VectorXd scores = decision_scores(model, test);

    std::vector<Label> predicted, truth;
    for (std::size_t t = 0; t < s.test.size(); ++t) {
      double sum = 0.0;
      for (int p = 0; p < per; ++p) sum += scores[static_cast<Eigen::Index>(t * per + p)];
      predicted.push_back(from_score(sum / per));
      truth.push_back(data_[s.test[t]].label);
    }
    return ace(predicted, truth).ace;
  }

  StageCounters counters() const {
    return {executions_.preprocess, executions_.extract, executions_.transform,
            executions_.classify, hits_};
  }

  void forget(const std::string& key) {
    std::lock_guard lock(memo_mutex_);
    memo_.erase(key);
  }

  std::size_t splits() const noexcept { return splits_.size(); }

 private:
  struct Executions {
    std::atomic<std::size_t> preprocess{0};
    std::atomic<std::size_t> extract{0};
    std::atomic<std::size_t> transform{0};
    std::atomic<std::size_t> classify{0};
  };

  static int rows_per_image(const PipelineConfig& c) { return c.augment ? kPatchCount : 1; }

  static FeatureMatrix gather(const FeatureMatrix& all, const std::vector<std::size_t>& images,
                              int per) {
    FeatureMatrix out(static_cast<Eigen::Index>(images.size()) * per, all.cols());
    Eigen::Index r = 0;
    for (auto i : images)
      for (int p = 0; p < per; ++p) out.row(r++) = all.row(static_cast<Eigen::Index>(i) * per + p);
    return out;
  }

  static std::string digest(std::initializer_list<std::string_view> parts) {
    Sha256 h;
    for (std::string_view p : parts) h.update(p);
    return to_hex(h.finish());
  }

  template <typename Compute>
  std::shared_ptr<const StageOutput> obtain(const std::string& key,
                                            std::atomic<std::size_t>& counter, Compute&& compute) {
    if (memoize_) {
      std::lock_guard lock(memo_mutex_);
      if (auto it = failures_.find(key); it != failures_.end()) throw Error(it->second);
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++hits_;
        return it->second;
      }
    }
    if (cache_) {
      if (auto value = cache_->find(key)) {
        ++hits_;
        remember(key, value);
        return value;
      }
    }
    std::shared_ptr<const StageOutput> value;
    try {
      ++counter;
      value = std::make_shared<const StageOutput>(compute());
    } catch (const std::exception& e) {
      if (memoize_) {
        std::lock_guard lock(memo_mutex_);
        failures_.emplace(key, e.what());
      }
      throw;
    }
    if (cache_) cache_->insert(key, value);
    remember(key, value);
    return value;
  }

  void remember(const std::string& key, const std::shared_ptr<const StageOutput>& value) {
    if (!memoize_) return;
    std::lock_guard lock(memo_mutex_);
    memo_.emplace(key, value);
  }

  const std::vector<LabeledImage>& data_;
  const GridSpec& grid_;
  std::vector<Split> splits_;
  StageCache* cache_;
  bool memoize_;
  std::string data_digest_;
  std::vector<std::string> split_digests_;

  Executions executions_;
  std::atomic<std::size_t> hits_{0};
  std::mutex memo_mutex_;
  std::unordered_map<std::string, std::shared_ptr<const StageOutput>> memo_;
  std::unordered_map<std::string, std::string> failures_;
};

// Runs fn(i) for every index, swallowing stage failures; they resurface
// when the dependent candidates are classified.
template <typename Fn>
void warm(std::size_t n, unsigned threads, Fn&& fn) {
  parallel_for(n, threads, [&](std::size_t i) {
    try {
      fn(i);
    } catch (const std::exception&) {
    }
  });
}

std::string num(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

GridSearchResult grid_search(const std::vector<LabeledImage>& data, const GridSpec& grid,
                             const GridSearchOptions& options) {
  require(grid.size() > 0, "grid has no candidates");
  std::vector<Label> labels;
  for (const LabeledImage& s : data) labels.push_back(s.label);
  std::vector<Split> splits = five_by_two_splits(labels, derive_seed(grid.seed, "cv"));
  require(options.max_splits >= 1, "grid search needs at least one split");
  if (splits.size() > options.max_splits) splits.resize(options.max_splits);

  std::optional<StageCache> cache;
  if (options.use_cache)
    cache.emplace(options.memory_budget_bytes, options.cache_dir, options.disk_budget_bytes);
  Search search(data, grid, splits, cache ? &*cache : nullptr, options.use_cache);

  const std::size_t candidates = grid.size();
  const std::size_t split_count = search.splits();
  std::vector<std::vector<double>> fold_ace(candidates, std::vector<double>(split_count, 1.0));
  std::vector<std::string> failure(candidates);
  std::mutex failure_mutex;

  auto evaluate = [&](std::size_t c, std::size_t s) {
    try {
      fold_ace[c][s] = search.classify(grid.candidate(c), s);
    } catch (const std::exception& e) {
      fold_ace[c][s] = 1.0;
      std::lock_guard lock(failure_mutex);
      if (failure[c].empty()) failure[c] = e.what();
    }
  };

  if (options.use_cache) {
    // Breadth-first over stages so each distinct prefix is computed once.
    std::map<std::string, std::size_t> pre, ext;
    for (std::size_t c = 0; c < candidates; ++c) {
      const StageKeys k = search.keys(grid.candidate(c), 0);
      pre.emplace(k.preprocess, c);
      ext.emplace(k.extract, c);
    }
    auto run_stage = [&](const std::map<std::string, std::size_t>& reps, auto&& fn) {
      std::vector<std::size_t> idx;
      for (const auto& [key, c] : reps) idx.push_back(c);
      warm(idx.size(), options.threads, [&](std::size_t i) { fn(idx[i]); });
    };
    run_stage(pre, [&](std::size_t c) {
      const PipelineConfig cfg = grid.candidate(c);
      search.preprocessed(cfg, search.keys(cfg, 0));
    });
    run_stage(ext, [&](std::size_t c) {
      const PipelineConfig cfg = grid.candidate(c);
      search.features(cfg, search.keys(cfg, 0));
    });
    for (std::size_t s = 0; s < split_count; ++s) {
      std::map<std::string, std::size_t> tr;
      for (std::size_t c = 0; c < candidates; ++c)
        tr.emplace(search.keys(grid.candidate(c), s).transform, c);
      run_stage(tr, [&](std::size_t c) {
        const PipelineConfig cfg = grid.candidate(c);
        search.transformed(cfg, search.keys(cfg, s), s);
      });
      parallel_for(candidates, options.threads, [&](std::size_t c) { evaluate(c, s); });
      for (const auto& [key, c] : tr) search.forget(key);
    }
  } else {
    parallel_for(candidates * split_count, options.threads,
                 [&](std::size_t i) { evaluate(i / split_count, i % split_count); });
  }

  GridSearchResult result;
  result.counters = search.counters();
  for (std::size_t c = 0; c < candidates; ++c) {
    CandidateReport row;
    row.index = c;
    row.config = grid.candidate(c);
    row.fold_ace = fold_ace[c];
    row.mean_ace =
        std::accumulate(row.fold_ace.begin(), row.fold_ace.end(), 0.0) / static_cast<double>(split_count);
    row.failed = !failure[c].empty();
    row.failure = failure[c];
    result.table.push_back(std::move(row));
  }
  auto better = [](const CandidateReport& a, const CandidateReport& b) {
    if (a.mean_ace != b.mean_ace) return a.mean_ace < b.mean_ace;
    if (a.config.transform.pca_fraction != b.config.transform.pca_fraction)
      return a.config.transform.pca_fraction < b.config.transform.pca_fraction;
    if (a.config.classify.C != b.config.classify.C) return a.config.classify.C < b.config.classify.C;
    return a.index < b.index;
  };
  result.best = static_cast<std::size_t>(
      std::min_element(result.table.begin(), result.table.end(), better) - result.table.begin());
  return result;
}

std::string format_report(const GridSearchResult& result) {
  std::string out = "index\tmean_ace\tfailed\tfold_ace\tconfig\n";
  for (const CandidateReport& row : result.table) {
    out += std::to_string(row.index) + "\t" + num(row.mean_ace) + "\t" + (row.failed ? "1" : "0") + "\t";
    for (std::size_t i = 0; i < row.fold_ace.size(); ++i) {
      if (i > 0) out += ",";
      out += num(row.fold_ace[i]);
    }
    out += "\t" + row.config.canonical() + "\n";
  }
  out += "best\t" + std::to_string(result.best) + "\n";
  return out;
}

}  // namespace livecheck
