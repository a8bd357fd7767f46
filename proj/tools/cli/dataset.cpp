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

#include "cli/dataset.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include "livecheck/error.hpp"
#include "livecheck/imageproc.hpp"
#include "livecheck/parallel.hpp"

namespace livecheck::cli {
namespace fs = std::filesystem;

namespace {

bool is_pgm(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm";
}

std::vector<std::string> list_class(const fs::path& root, const std::string& name) {
  const fs::path dir = root / name;
  if (!fs::is_directory(dir)) throw Error("missing subdirectory " + dir.string());
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || !is_pgm(entry.path())) continue;
    names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

std::size_t DatasetManifest::count(Label label) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [&](const DatasetEntry& e) { return e.label == label; }));
}

DatasetManifest load_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error("dataset root " + root.string() + " is not a directory");
  DatasetManifest manifest;
  manifest.root = root;
  for (const auto& [name, label] : {std::pair{"live", Label::live}, std::pair{"fake", Label::fake}})
    for (const std::string& file : list_class(root, name))
      manifest.entries.push_back({fs::path(name) / file, label});
  return manifest;
}

void require_both_classes(const DatasetManifest& manifest) {
  if (manifest.count(Label::live) == 0 || manifest.count(Label::fake) == 0)
    throw Error("missing class: " + manifest.root.string() + " needs images in both live/ and fake/");
}

LoadedDataset load_images(const DatasetManifest& manifest, bool skip_unreadable, std::ostream& err,
                          unsigned threads) {
  const std::size_t n = manifest.entries.size();
  std::vector<std::optional<Image>> images(n);
  std::vector<std::string> failures(n);
  parallel_for(n, threads, [&](std::size_t i) {
    try {
      images[i] = read_image(manifest.path(i));
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  LoadedDataset out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!images[i]) {
      const std::string message = manifest.path(i).string() + ": " + failures[i];
      if (!skip_unreadable) throw Error(message);
      err << "skipped " << message << '\n';
      continue;
    }
    out.samples.push_back({std::move(*images[i]), manifest.entries[i].label});
    out.source.push_back(i);
  }
  return out;
}

}  // namespace livecheck::cli
