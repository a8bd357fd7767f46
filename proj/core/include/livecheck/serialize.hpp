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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "livecheck/pipeline.hpp"

namespace livecheck {

/// Little-endian binary writer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v);
  void str(std::string_view s);
  void raw(std::span<const std::uint8_t> data);
  void matrix(const Eigen::MatrixXd& m);
  void vector(const Eigen::VectorXd& v);
  /// u64 length followed by the payload.
  void block(const ByteWriter& payload);

  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Bounds-checked reader matching ByteWriter; throws Error on overrun.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64();
  std::string str();
  std::span<const std::uint8_t> raw(std::size_t n);
  Eigen::MatrixXd matrix();
  Eigen::VectorXd vector();
  ByteReader block();

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  bool done() const noexcept { return remaining() == 0; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

inline constexpr std::string_view kModelMagic = "LVCK";
inline constexpr std::uint16_t kModelVersion = 1;

/// Model file: magic, u16 version, length-prefixed stages (config,
/// extractor, standardizer, PCA, SVM), then a SHA-256 footer over all
/// preceding bytes.
std::vector<std::uint8_t> save_model(const TrainedPipeline& model);
TrainedPipeline load_model(std::span<const std::uint8_t> bytes);

void save_model_file(const std::filesystem::path& path, const TrainedPipeline& model);
TrainedPipeline load_model_file(const std::filesystem::path& path);

void write_config(ByteWriter& out, const PipelineConfig& config);
PipelineConfig read_config(ByteReader& in);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace livecheck
