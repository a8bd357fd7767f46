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

#include "cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <exception>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli/config_file.hpp"
#include "cli/dataset.hpp"
#include "livecheck/digest.hpp"
#include "livecheck/error.hpp"
#include "livecheck/imageproc.hpp"
#include "livecheck/parallel.hpp"
#include "livecheck/pipeline.hpp"
#include "livecheck/serialize.hpp"
#include "livecheck/synthetic.hpp"

namespace livecheck::cli {
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kMiB = std::size_t{1} << 20;

std::optional<fs::path> cache_dir_from_env() {
  const char* dir = std::getenv("LIVECHECK_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return fs::path(dir);
}

LoadedDataset load_training_data(const fs::path& root, bool skip_unreadable, std::ostream& err,
                                 unsigned threads) {
  const DatasetManifest manifest = load_dataset(root);
  require_both_classes(manifest);
  LoadedDataset data = load_images(manifest, skip_unreadable, err, threads);
  std::size_t live = 0;
  for (const auto& s : data.samples) live += s.label == Label::live;
  if (live == 0 || live == data.samples.size())
    throw Error("missing class: no readable images left in one class of " + root.string());
  return data;
}

std::string file_digest(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  const auto digest = sha256(bytes);
  return to_hex(digest);
}

void fit_and_save(const std::vector<LabeledImage>& samples, const PipelineConfig& config,
                  const ConfigFile& cfg, const fs::path& out_path, std::ostream& out) {
  const TrainedPipeline model = fit_final(samples, config, cfg.threads);
  save_model_file(out_path, model);
  out << fmt::format("model {} sha256 {}\n", out_path.string(), file_digest(out_path));
}

int train_impl(const TrainOptions& options, bool force_search, std::ostream& out,
               std::ostream& err) {
  const ConfigFile cfg = load_config(options.config);
  const LoadedDataset data =
      load_training_data(options.data, options.skip_unreadable, err, cfg.threads);

  if (!force_search && !cfg.is_grid()) {
    const PipelineConfig config = cfg.grid.candidate(0);
    out << fmt::format("config {}\n", config.canonical());
    fit_and_save(data.samples, config, cfg, options.out, out);
    return 0;
  }

  GridSearchOptions search;
  search.use_cache = cfg.use_cache;
  search.memory_budget_bytes = cfg.cache_memory_mb * kMiB;
  search.disk_budget_bytes = cfg.cache_disk_mb * kMiB;
  search.cache_dir = cache_dir_from_env();
  search.threads = cfg.threads;
  const GridSearchResult result = grid_search(data.samples, cfg.grid, search);
  const std::string table = format_report(result);
  out << table;
  if (options.report) {
    const std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(table.data()),
                                              table.size());
    write_file_bytes(*options.report, bytes);
  }

  const CandidateReport& best = result.best_candidate();
  if (best.failed) throw Error("every candidate failed; first failure: " + best.failure);
  out << fmt::format("config {}\n", best.config.canonical());
  out << fmt::format("validation_ace {:.2f}%\n", 100.0 * best.mean_ace);
  fit_and_save(data.samples, best.config, cfg, options.out, out);
  return 0;
}

}  // namespace

std::string format_prediction(const std::string& path, double score) {
  return fmt::format("{} {:.10g} {}", path, score, label_name(from_score(score)));
}

std::string format_evaluation(const EvalReport& r) {
  return fmt::format(
      "FPR {:.2f}%\nFNR {:.2f}%\nACE {:.2f}%\n"
      "live_total {} live_wrong {} fake_total {} fake_wrong {}\n",
      100.0 * r.fpr, 100.0 * r.fnr, 100.0 * r.ace, r.live_total, r.live_wrong, r.fake_total,
      r.fake_wrong);
}

int cmd_train(const TrainOptions& options, std::ostream& out, std::ostream& err) {
  return train_impl(options, false, out, err);
}

int cmd_gridsearch(const TrainOptions& options, std::ostream& out, std::ostream& err) {
  require(options.report.has_value(), "gridsearch needs a report path");
  return train_impl(options, true, out, err);
}

int cmd_predict(const PredictOptions& options, std::ostream& out, std::ostream& err) {
  const TrainedPipeline model = load_model_file(options.model);
  const std::size_t n = options.images.size();
  std::vector<std::optional<double>> scores(n);
  std::vector<std::string> failures(n);
  std::vector<double> millis(n, 0.0);

  parallel_for(n, options.timing ? 1u : options.threads, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    try {
      scores[i] = model.score(read_image(options.images[i]));
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
    millis[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  });

  int status = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string path = options.images[i].string();
    if (scores[i]) {
      out << format_prediction(path, *scores[i]) << '\n';
      if (options.timing) err << fmt::format("timing {} {:.3f} ms\n", path, millis[i]);
    } else {
      err << fmt::format("error: {}: {}\n", path, failures[i]);
      status = 1;
    }
  }
  return status;
}

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err) {
  const TrainedPipeline model = load_model_file(options.model);
  const LoadedDataset data =
      load_training_data(options.data, options.skip_unreadable, err, options.threads);
  const std::size_t n = data.samples.size();
  std::vector<Label> predicted(n);
  std::vector<Label> truth(n);
  parallel_for(n, options.threads, [&](std::size_t i) {
    predicted[i] = model.predict(data.samples[i].image);
    truth[i] = data.samples[i].label;
  });
  out << format_evaluation(ace(predicted, truth));
  return 0;
}

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream&) {
  require(options.per_class > 0, "per-class count must be positive");
  TextureParams params;
  params.size = options.size;
  const auto data = make_texture_dataset(options.per_class, options.seed, params);
  fs::create_directories(options.out / "live");
  fs::create_directories(options.out / "fake");
  std::size_t live = 0;
  std::size_t fake = 0;
  for (const auto& sample : data) {
    const bool is_live = sample.label == Label::live;
    const std::size_t index = is_live ? live++ : fake++;
    const fs::path path = options.out / (is_live ? "live" : "fake") /
                          fmt::format("{}_{:05d}.pgm", is_live ? "live" : "fake", index);
    write_pgm(path, sample.image);
  }
  out << fmt::format("wrote {} live and {} fake images to {}\n", live, fake, options.out.string());
  return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fingerprint liveness detection: train, search, predict, evaluate"};
  app.require_subcommand(1);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Fit a pipeline and write a model file");
  train_cmd->add_option("--config", train.config, "Pipeline configuration file")->required();
  train_cmd->add_option("--data", train.data, "Dataset root with live/ and fake/")->required();
  train_cmd->add_option("--out", train.out, "Model file to write")->required();
  train_cmd->add_option("--report", train.report, "Write the validation table here");
  train_cmd->add_flag("--skip-unreadable", train.skip_unreadable, "Skip images that fail to load");

  TrainOptions search;
  auto* search_cmd = app.add_subcommand("gridsearch", "Cross-validated grid search");
  search_cmd->add_option("--config", search.config, "Grid configuration file")->required();
  search_cmd->add_option("--data", search.data, "Dataset root with live/ and fake/")->required();
  search_cmd->add_option("--report", search.report, "Validation table output")->required();
  search_cmd->add_option("--out", search.out, "Model file for the best candidate")->required();
  search_cmd->add_flag("--skip-unreadable", search.skip_unreadable, "Skip images that fail to load");

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Score images with a trained model");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("images", predict.images, "Images to score")->required();
  predict_cmd->add_flag("--timing", predict.timing, "Print per-image latency to stderr");
  predict_cmd->add_option("--threads", predict.threads, "Worker threads (0 = all cores)");

  EvaluateOptions evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Error rates on a labelled dataset");
  evaluate_cmd->add_option("--model", evaluate.model, "Model file")->required();
  evaluate_cmd->add_option("--data", evaluate.data, "Dataset root with live/ and fake/")->required();
  evaluate_cmd->add_flag("--skip-unreadable", evaluate.skip_unreadable, "Skip images that fail to load");
  evaluate_cmd->add_option("--threads", evaluate.threads, "Worker threads (0 = all cores)");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate the synthetic ridge-texture dataset");
  synth_cmd->add_option("--out", synth.out, "Dataset root to create")->required();
  synth_cmd->add_option("--per-class", synth.per_class, "Images per class");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--size", synth.size, "Image side in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*train_cmd) return cmd_train(train, out, err);
    if (*search_cmd) return cmd_gridsearch(search, out, err);
    if (*predict_cmd) return cmd_predict(predict, out, err);
    if (*evaluate_cmd) return cmd_evaluate(evaluate, out, err);
    if (*synth_cmd) return cmd_synth(synth, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace livecheck::cli
