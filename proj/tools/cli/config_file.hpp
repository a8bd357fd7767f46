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
#include <string>
#include <string_view>

#include "livecheck/modelsel.hpp"

namespace livecheck::cli {

/// Parsed pipeline configuration file.
///
/// The file is INI-style: `[section]` headers followed by `key = value`
/// lines, `#` comments. Sections are preprocess, augment, extract,
/// transform, classify and search. A comma-separated value lists grid
/// candidates; unknown sections or keys are rejected. `search.seed` is
/// mandatory.
struct ConfigFile {
  GridSpec grid;
  unsigned threads = 0;
  bool use_cache = true;
  std::size_t cache_memory_mb = 1024;
  std::size_t cache_disk_mb = 4096;

  bool is_grid() const noexcept { return grid.size() > 1; }
};

ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::filesystem::path& path);

}  // namespace livecheck::cli
