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

#include "livecheck/stage_cache.hpp"

#include <algorithm>
#include <cstring>
#include <system_error>

#include "livecheck/digest.hpp"
#include "livecheck/error.hpp"
#include "livecheck/serialize.hpp"

namespace livecheck {
namespace fs = std::filesystem;

namespace {
constexpr std::string_view kStageMagic = "LVCC";
constexpr std::string_view kStageSuffix = ".lcc";
}  // namespace

std::size_t byte_size(const StageOutput& output) noexcept {
  std::size_t bytes = 0;
  for (const auto& m : output) bytes += static_cast<std::size_t>(m.size()) * sizeof(double);
  return bytes;
}

std::vector<std::uint8_t> encode_stage_output(const StageOutput& output) {
  ByteWriter out;
  out.raw(std::span(reinterpret_cast<const std::uint8_t*>(kStageMagic.data()), kStageMagic.size()));
  out.u64(output.size());
  for (const auto& m : output) out.matrix(m);
  const Sha256Digest digest = sha256(out.bytes());
  out.raw(digest);
  return out.take();
}

StageOutput decode_stage_output(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kStageMagic.size() + 8 + 32 ||
      std::memcmp(bytes.data(), kStageMagic.data(), kStageMagic.size()) != 0)
    throw Error("not a stage cache entry");
  const auto body = bytes.first(bytes.size() - 32);
  const Sha256Digest digest = sha256(body);
  if (std::memcmp(digest.data(), bytes.data() + body.size(), 32) != 0)
    throw Error("stage cache entry digest mismatch");
  ByteReader in(body);
  in.raw(kStageMagic.size());
  const auto count = in.u64();
  if (count > in.remaining() / 16) throw Error("unexpected end of data");
  StageOutput output;
  for (std::uint64_t i = 0; i < count; ++i) output.push_back(in.matrix());
  if (!in.done()) throw Error("trailing data in stage cache entry");
  return output;
}

StageCache::StageCache(std::size_t memory_budget_bytes, std::optional<fs::path> directory,
                       std::size_t disk_budget_bytes)
    : memory_budget_(memory_budget_bytes),
      directory_(std::move(directory)),
      disk_budget_(disk_budget_bytes) {
  if (!directory_) return;
  fs::create_directories(*directory_);
  struct Found {
    std::string key;
    std::size_t bytes;
    fs::file_time_type time;
  };
  std::vector<Found> found;
  for (const auto& entry : fs::directory_iterator(*directory_)) {
    if (!entry.is_regular_file() || entry.path().extension() != kStageSuffix) continue;
    found.push_back({entry.path().stem().string(), static_cast<std::size_t>(entry.file_size()),
                     entry.last_write_time()});
  }
  // Most recently written first.
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return a.time != b.time ? a.time > b.time : a.key < b.key;
  });
  for (const Found& f : found) {
    disk_lru_.push_back({f.key, f.bytes});
    disk_index_[f.key] = std::prev(disk_lru_.end());
    disk_used_ += f.bytes;
  }
}

fs::path StageCache::disk_path(const std::string& name) const {
  return *directory_ / (name + std::string(kStageSuffix));
}

namespace {
std::string file_name_for(const std::string& key) {
  Sha256 h;
  h.update(key);
  return to_hex(h.finish());
}
}  // namespace

std::shared_ptr<const StageOutput> StageCache::find(const std::string& key) {
  std::lock_guard lock(mutex_);
  if (auto it = memory_index_.find(key); it != memory_index_.end()) {
    memory_lru_.splice(memory_lru_.begin(), memory_lru_, it->second);
    return it->second->value;
  }
  if (!directory_) return nullptr;
  auto value = load_disk(key);
  if (value) insert_memory(key, value);
  return value;
}

void StageCache::insert(const std::string& key, std::shared_ptr<const StageOutput> value) {
  std::lock_guard lock(mutex_);
  insert_memory(key, value);
  if (directory_) store_disk(key, *value);
}

void StageCache::insert_memory(const std::string& key, std::shared_ptr<const StageOutput> value) {
  if (auto it = memory_index_.find(key); it != memory_index_.end()) {
    memory_used_ -= it->second->bytes;
    memory_lru_.erase(it->second);
    memory_index_.erase(it);
  }
  const std::size_t bytes = byte_size(*value);
  if (bytes > memory_budget_) return;
  while (memory_used_ + bytes > memory_budget_ && !memory_lru_.empty()) {
    memory_used_ -= memory_lru_.back().bytes;
    memory_index_.erase(memory_lru_.back().key);
    memory_lru_.pop_back();
  }
  memory_lru_.push_front({key, std::move(value), bytes});
  memory_index_[key] = memory_lru_.begin();
  memory_used_ += bytes;
}

std::shared_ptr<const StageOutput> StageCache::load_disk(const std::string& key) {
  const std::string name = file_name_for(key);
  auto it = disk_index_.find(name);
  if (it == disk_index_.end()) return nullptr;
  const fs::path path = disk_path(name);
  try {
    auto value = std::make_shared<const StageOutput>(decode_stage_output(read_file_bytes(path)));
    disk_lru_.splice(disk_lru_.begin(), disk_lru_, it->second);
    std::error_code ec;
    fs::last_write_time(path, fs::file_time_type::clock::now(), ec);
    return value;
  } catch (const Error&) {
    // Unreadable or corrupted entries are dropped and recomputed.
    disk_used_ -= it->second->bytes;
    disk_lru_.erase(it->second);
    disk_index_.erase(it);
    std::error_code ec;
    fs::remove(path, ec);
    return nullptr;
  }
}

void StageCache::store_disk(const std::string& key, const StageOutput& value) {
  const std::string name = file_name_for(key);
  const std::vector<std::uint8_t> bytes = encode_stage_output(value);
  if (bytes.size() > disk_budget_) return;
  if (auto it = disk_index_.find(name); it != disk_index_.end()) {
    disk_used_ -= it->second->bytes;
    disk_lru_.erase(it->second);
    disk_index_.erase(it);
  }
  while (disk_used_ + bytes.size() > disk_budget_ && !disk_lru_.empty()) {
    std::error_code ec;
    fs::remove(disk_path(disk_lru_.back().key), ec);
    disk_used_ -= disk_lru_.back().bytes;
    disk_index_.erase(disk_lru_.back().key);
    disk_lru_.pop_back();
  }
  const fs::path path = disk_path(name);
  const fs::path tmp = path.string() + ".tmp";
  write_file_bytes(tmp, bytes);
  fs::rename(tmp, path);
  disk_lru_.push_front({name, bytes.size()});
  disk_index_[name] = disk_lru_.begin();
  disk_used_ += bytes.size();
}

std::size_t StageCache::memory_bytes() const {
  std::lock_guard lock(mutex_);
  return memory_used_;
}

std::size_t StageCache::disk_bytes() const {
  std::lock_guard lock(mutex_);
  return disk_used_;
}

std::size_t StageCache::memory_entries() const {
  std::lock_guard lock(mutex_);
  return memory_lru_.size();
}

}  // namespace livecheck
