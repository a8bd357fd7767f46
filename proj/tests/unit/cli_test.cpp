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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli/commands.hpp"
#include "cli/config_file.hpp"
#include "cli/dataset.hpp"
#include "livecheck/augment.hpp"
#include "livecheck/error.hpp"
#include "livecheck/imageproc.hpp"
#include "livecheck/serialize.hpp"

namespace livecheck::cli {
namespace {
namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// Shared synthetic train/test sets, generated once.
class CliData : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("livecheck_cli_test");
    std::ostringstream sink;
    ASSERT_EQ(cmd_synth({dir_->path() / "train", 20, 1, 32}, sink, sink), 0);
    ASSERT_EQ(cmd_synth({dir_->path() / "test", 10, 2, 32}, sink, sink), 0);
    write_text(dir_->path() / "single.ini",
               "[search]\nseed = 3\n[extract]\ntype = lbp\nlbp_blocks = 2x2\n");
  }
  static void TearDownTestSuite() { delete dir_; }

  static fs::path at(const std::string& name) { return dir_->path() / name; }

  static inline TempDir* dir_ = nullptr;
};

TEST(ConfigFile, ParsesGridLists) {
  const ConfigFile cfg = parse_config(R"(
# comment
[search]
seed = 9
threads = 2
[preprocess]
scale = 1.0, 0.5
filter = none, lowpass
[augment]
enabled = false, true
[extract]
type = lbp, convnet
lbp_variant = original
lbp_blocks = 1x1, 2x2
convnet = 8:5:3:3:9/16:3:2:2:1
[transform]
pca_fraction = 0.1, 0.2
whiten = false
[classify]
C = 1, 10
gamma = auto, 0.5
)");
  EXPECT_EQ(cfg.grid.seed, 9u);
  EXPECT_EQ(cfg.threads, 2u);
  EXPECT_EQ(cfg.grid.preprocess.size(), 4u);
  EXPECT_EQ(cfg.grid.augment.size(), 2u);
  ASSERT_EQ(cfg.grid.extract.size(), 3u);
  EXPECT_EQ(cfg.grid.extract[1].lbp.block_rows, 2);
  EXPECT_EQ(cfg.grid.extract[0].lbp.variant, LbpVariant::original);
  ASSERT_EQ(cfg.grid.extract[2].convnet.layers.size(), 2u);
  EXPECT_EQ(cfg.grid.extract[2].convnet.layers[1].num_filters, 16);
  EXPECT_EQ(cfg.grid.extract[2].convnet.layers[1].lcn_window, 1);
  EXPECT_EQ(cfg.grid.transform.size(), 2u);
  EXPECT_FALSE(cfg.grid.transform[0].whiten);
  ASSERT_EQ(cfg.grid.classify.size(), 4u);
  EXPECT_FALSE(cfg.grid.classify[0].gamma.has_value());
  EXPECT_EQ(cfg.grid.classify[1].gamma, 0.5);
  EXPECT_EQ(cfg.grid.size(), 4u * 2u * 3u * 2u * 4u);
  EXPECT_TRUE(cfg.is_grid());
}

TEST(ConfigFile, DefaultsGiveSingleConfig) {
  const ConfigFile cfg = parse_config("[search]\nseed = 1\n");
  EXPECT_FALSE(cfg.is_grid());
  PipelineConfig expected;
  expected.seed = 1;
  EXPECT_EQ(cfg.grid.candidate(0), expected);
}

TEST(ConfigFile, UnknownKeysAndBadValuesNameTheKey) {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("[search]\nseed=1\n[extract]\nlbp_blokcs = 2x2\n").find("extract.lbp_blokcs"),
            std::string::npos);
  EXPECT_NE(message("[search]\nseed=1\n[classify]\nC = ten\n").find("classify.C"), std::string::npos);
  EXPECT_NE(message("[extract]\ntype = lbp\n").find("search.seed"), std::string::npos);
  EXPECT_NE(message("[searh]\nseed=1\n").find("searh"), std::string::npos);
  EXPECT_NE(message("[search]\nseed=1\n[extract]\nconvnet = 8:4:3:3:9\n").find("extract.convnet"),
            std::string::npos);
}

TEST(Dataset, LexicographicWithLabels) {
  TempDir dir("livecheck_dataset_test");
  fs::create_directories(dir.path() / "live");
  fs::create_directories(dir.path() / "fake");
  for (const char* name : {"live/b.pgm", "live/a.pgm", "fake/c.pgm", "live/notes.txt"})
    write_pgm(dir.path() / name, Image(3, 3, 0.5));
  const DatasetManifest m = load_dataset(dir.path());
  ASSERT_EQ(m.entries.size(), 3u);
  EXPECT_EQ(m.entries[0].relative, fs::path("live") / "a.pgm");
  EXPECT_EQ(m.entries[1].relative, fs::path("live") / "b.pgm");
  EXPECT_EQ(m.entries[2].relative, fs::path("fake") / "c.pgm");
  EXPECT_EQ(m.entries[0].label, Label::live);
  EXPECT_EQ(m.entries[2].label, Label::fake);
  EXPECT_EQ(load_dataset(dir.path()).entries, m.entries);
}

TEST(Dataset, MissingClassAndDirectories) {
  TempDir dir("livecheck_dataset_missing");
  EXPECT_THROW(load_dataset(dir.path()), Error);
  fs::create_directories(dir.path() / "live");
  fs::create_directories(dir.path() / "fake");
  write_pgm(dir.path() / "fake" / "x.pgm", Image(3, 3));
  try {
    require_both_classes(load_dataset(dir.path()));
    FAIL() << "expected missing class";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("missing class"), std::string::npos);
  }
}

TEST(Dataset, UnreadableImageNeedsExplicitSkip) {
  TempDir dir("livecheck_dataset_unreadable");
  fs::create_directories(dir.path() / "live");
  fs::create_directories(dir.path() / "fake");
  write_pgm(dir.path() / "live" / "ok.pgm", Image(3, 3));
  write_text(dir.path() / "fake" / "broken.pgm", "P5 garbage");
  const DatasetManifest m = load_dataset(dir.path());
  std::ostringstream err;
  try {
    load_images(m, false, err);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("broken.pgm"), std::string::npos);
  }
  const LoadedDataset loaded = load_images(m, true, err);
  EXPECT_EQ(loaded.samples.size(), 1u);
  EXPECT_NE(err.str().find("broken.pgm"), std::string::npos);
}

TEST_F(CliData, TrainWritesValidModel) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_train({at("single.ini"), at("train"), at("single.model")}, out, err), 0) << err.str();
  EXPECT_NO_THROW(load_model_file(at("single.model")));
  EXPECT_NE(out.str().find("config "), std::string::npos);
  EXPECT_NE(out.str().find("sha256 "), std::string::npos);
}

TEST_F(CliData, TrainRejectsBadKey) {
  write_text(at("bad.ini"), "[search]\nseed = 1\n[transform]\npca_fractoin = 0.2\n");
  std::ostringstream out, err;
  const char* argv[] = {"livecheck", "train", "--config", "", "--data", "", "--out", ""};
  const std::string config = at("bad.ini").string(), data = at("train").string(),
                    model = at("bad.model").string();
  argv[3] = config.c_str();
  argv[5] = data.c_str();
  argv[7] = model.c_str();
  EXPECT_NE(run(8, argv, out, err), 0);
  EXPECT_NE(err.str().find("transform.pca_fractoin"), std::string::npos);
  EXPECT_FALSE(fs::exists(at("bad.model")));
}

TEST_F(CliData, GridReportHasOneRowPerCandidate) {
  write_text(at("grid.ini"),
             "[search]\nseed = 4\n[extract]\nlbp_blocks = 1x1, 2x2\n[classify]\nC = 1, 10\n");
  std::ostringstream out, err;
  TrainOptions opts{at("grid.ini"), at("train"), at("grid.model"), at("grid.tsv")};
  ASSERT_EQ(cmd_gridsearch(opts, out, err), 0) << err.str();
  std::ifstream in(at("grid.tsv"));
  std::stringstream report;
  report << in.rdbuf();
  const auto rows = lines(report.str());
  ASSERT_EQ(rows.size(), 1u + 4u + 1u);
  EXPECT_EQ(rows[0].rfind("index\tmean_ace", 0), 0u);
  for (std::size_t i = 1; i <= 4; ++i) EXPECT_EQ(rows[i].rfind(std::to_string(i - 1) + "\t", 0), 0u);
  EXPECT_NE(out.str().find("validation_ace"), std::string::npos);
  EXPECT_NO_THROW(load_model_file(at("grid.model")));
}

TEST_F(CliData, PredictIsDeterministicAndReportsMissingFiles) {
  std::ostringstream sink;
  ASSERT_EQ(cmd_train({at("single.ini"), at("train"), at("p.model")}, sink, sink), 0);
  const fs::path img = at("test") / "live" / "live_00000.pgm";
  std::ostringstream out, err;
  const int status = cmd_predict({at("p.model"), {img, img, at("missing.pgm")}, false, 2}, out, err);
  EXPECT_NE(status, 0);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], rows[1]);
  EXPECT_EQ(rows[0].rfind(img.string() + " ", 0), 0u);
  EXPECT_NE(err.str().find("missing.pgm"), std::string::npos);
}

TEST_F(CliData, PredictTimingGoesToErrorStream) {
  std::ostringstream sink;
  ASSERT_EQ(cmd_train({at("single.ini"), at("train"), at("t.model")}, sink, sink), 0);
  std::ostringstream out, err;
  const fs::path img = at("test") / "fake" / "fake_00003.pgm";
  ASSERT_EQ(cmd_predict({at("t.model"), {img}, true, 0}, out, err), 0);
  EXPECT_EQ(lines(out.str()).size(), 1u);
  EXPECT_EQ(err.str().rfind("timing " + img.string() + " ", 0), 0u);
}

TEST_F(CliData, AugmentedPredictionIsPatchAverage) {
  write_text(at("aug.ini"), "[search]\nseed = 5\n[augment]\nenabled = true\n");
  std::ostringstream sink;
  ASSERT_EQ(cmd_train({at("aug.ini"), at("train"), at("aug.model")}, sink, sink), 0);
  const TrainedPipeline model = load_model_file(at("aug.model"));
  const fs::path img = at("test") / "live" / "live_00001.pgm";
  const Image probe = read_image(img);
  double sum = 0.0;
  for (const Image& patch : make_patches(probe).patches)
    sum += decision_score(model.svm, model.embed(model.extractor(patch)));
  std::ostringstream out, err;
  ASSERT_EQ(cmd_predict({at("aug.model"), {img}, false, 1}, out, err), 0);
  std::istringstream row(out.str());
  std::string path, label;
  double score = 0.0;
  row >> path >> score >> label;
  EXPECT_NEAR(score, sum / 10.0, 1e-8);
}

TEST_F(CliData, EvaluateMatchesRecountOfPredictions) {
  std::ostringstream sink;
  ASSERT_EQ(cmd_train({at("single.ini"), at("train"), at("e.model")}, sink, sink), 0);
  const DatasetManifest m = load_dataset(at("test"));
  PredictOptions p{at("e.model"), {}, false, 0};
  for (std::size_t i = 0; i < m.entries.size(); ++i) p.images.push_back(m.path(i));
  std::ostringstream pred, err;
  ASSERT_EQ(cmd_predict(p, pred, err), 0);
  std::size_t live = 0, fake = 0, live_wrong = 0, fake_wrong = 0;
  const auto rows = lines(pred.str());
  ASSERT_EQ(rows.size(), m.entries.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string label = rows[i].substr(rows[i].rfind(' ') + 1);
    if (m.entries[i].label == Label::live) {
      ++live;
      live_wrong += label != "live";
    } else {
      ++fake;
      fake_wrong += label != "fake";
    }
  }
  const double fpr = static_cast<double>(live_wrong) / live;
  const double fnr = static_cast<double>(fake_wrong) / fake;
  std::ostringstream eval;
  ASSERT_EQ(cmd_evaluate({at("e.model"), at("test"), false, 0}, eval, err), 0);
  char expected[256];
  std::snprintf(expected, sizeof expected,
                "FPR %.2f%%\nFNR %.2f%%\nACE %.2f%%\nlive_total %zu live_wrong %zu fake_total %zu "
                "fake_wrong %zu\n",
                100 * fpr, 100 * fnr, 100 * (fpr + fnr) / 2, live, live_wrong, fake, fake_wrong);
  EXPECT_EQ(eval.str(), expected);
}

TEST(EvaluateFormat, PerfectAndConstantModels) {
  EXPECT_EQ(lines(format_evaluation(EvalReport{0, 0, 0, 5, 5, 0, 0}))[2], "ACE 0.00%");
  EXPECT_EQ(lines(format_evaluation(EvalReport{0, 1, 0.5, 5, 5, 0, 5}))[2], "ACE 50.00%");
}

TEST_F(CliData, EvaluateNeedsBothClasses) {
  std::ostringstream sink;
  ASSERT_EQ(cmd_train({at("single.ini"), at("train"), at("m.model")}, sink, sink), 0);
  TempDir only_live("livecheck_cli_only_live");
  fs::create_directories(only_live.path() / "live");
  fs::create_directories(only_live.path() / "fake");
  fs::copy(at("test") / "live" / "live_00000.pgm", only_live.path() / "live" / "a.pgm");
  std::ostringstream out, err;
  const std::string model = at("m.model").string(), data = only_live.path().string();
  const char* argv[] = {"livecheck", "evaluate", "--model", model.c_str(), "--data", data.c_str()};
  EXPECT_NE(run(6, argv, out, err), 0);
  EXPECT_NE(err.str().find("missing class"), std::string::npos);
}

TEST_F(CliData, TrainingIsReproducible) {
  std::ostringstream a, b, sink;
  ASSERT_EQ(cmd_train({at("single.ini"), at("train"), at("r1.model")}, a, sink), 0);
  ASSERT_EQ(cmd_train({at("single.ini"), at("train"), at("r2.model")}, b, sink), 0);
  EXPECT_EQ(read_file_bytes(at("r1.model")), read_file_bytes(at("r2.model")));
}

TEST(CliArgs, UsageErrorsAreNonZero) {
  std::ostringstream out, err;
  const char* none[] = {"livecheck"};
  EXPECT_NE(run(1, none, out, err), 0);
  const char* missing[] = {"livecheck", "train", "--config", "x.ini"};
  EXPECT_NE(run(4, missing, out, err), 0);
}

}  // namespace
}  // namespace livecheck::cli
