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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "livecheck/types.hpp"

namespace livecheck::cli {

struct DatasetEntry {
  /// Path relative to the dataset root, e.g. "live/a.pgm".
  std::filesystem::path relative;
  Label label;

  bool operator==(const DatasetEntry&) const = default;
};

/// Images under `<root>/live/*.pgm` followed by `<root>/fake/*.pgm`, each
/// directory in lexicographic file-name order.
struct DatasetManifest {
  std::filesystem::path root;
  std::vector<DatasetEntry> entries;

  std::size_t count(Label label) const noexcept;
  std::filesystem::path path(std::size_t i) const { return root / entries.at(i).relative; }
};

DatasetManifest load_dataset(const std::filesystem::path& root);

/// Throws "missing class" unless both classes are present.
void require_both_classes(const DatasetManifest& manifest);

struct LoadedDataset {
  std::vector<LabeledImage> samples;
  /// Manifest index of each sample.
  std::vector<std::size_t> source;
};

/// Decodes every image. An unreadable image is an error naming its path,
/// unless `skip_unreadable` is set, in which case it is reported to `err`
/// and left out.
LoadedDataset load_images(const DatasetManifest& manifest, bool skip_unreadable, std::ostream& err,
                          unsigned threads = 0);

}  // namespace livecheck::cli
