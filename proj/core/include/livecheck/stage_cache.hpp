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
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace livecheck {

using StageOutput = std::vector<Eigen::MatrixXd>;

std::size_t byte_size(const StageOutput& output) noexcept;

/// Digest-keyed store of stage outputs: an in-memory LRU tier bounded by a
/// byte budget, backed by an optional on-disk LRU tier. Safe for concurrent
/// use; inserting an existing key replaces it with an identical value.
class StageCache {
 public:
  StageCache(std::size_t memory_budget_bytes,
             std::optional<std::filesystem::path> directory = std::nullopt,
             std::size_t disk_budget_bytes = std::size_t{4} << 30);

  /// Keys may be any string; disk entries are named by the key digest.
  std::shared_ptr<const StageOutput> find(const std::string& key);
  void insert(const std::string& key, std::shared_ptr<const StageOutput> value);

  std::size_t memory_bytes() const;
  std::size_t disk_bytes() const;
  std::size_t memory_entries() const;

 private:
  struct MemoryEntry {
    std::string key;
    std::shared_ptr<const StageOutput> value;
    std::size_t bytes;
  };
  struct DiskEntry {
    std::string key;
    std::size_t bytes;
  };

  void insert_memory(const std::string& key, std::shared_ptr<const StageOutput> value);
  std::shared_ptr<const StageOutput> load_disk(const std::string& key);
  void store_disk(const std::string& key, const StageOutput& value);
  std::filesystem::path disk_path(const std::string& key) const;

  mutable std::mutex mutex_;
  std::size_t memory_budget_;
  std::size_t memory_used_ = 0;
  std::list<MemoryEntry> memory_lru_;
  std::unordered_map<std::string, std::list<MemoryEntry>::iterator> memory_index_;

  std::optional<std::filesystem::path> directory_;
  std::size_t disk_budget_;
  std::size_t disk_used_ = 0;
  std::list<DiskEntry> disk_lru_;
  std::unordered_map<std::string, std::list<DiskEntry>::iterator> disk_index_;
};

std::vector<std::uint8_t> encode_stage_output(const StageOutput& output);
/// Throws Error on malformed or corrupted input.
StageOutput decode_stage_output(std::span<const std::uint8_t> bytes);

}  // namespace livecheck
