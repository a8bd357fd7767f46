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

#include "livecheck/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "livecheck/digest.hpp"
#include "livecheck/error.hpp"

namespace livecheck {

void ByteWriter::u16(std::uint16_t v) {
  for (int i = 0; i < 2; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}
void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}
void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}
void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::str(std::string_view s) {
  u64(s.size());
  bytes_.insert(bytes_.end(), s.begin(), s.end());
}

void ByteWriter::raw(std::span<const std::uint8_t> data) {
  bytes_.insert(bytes_.end(), data.begin(), data.end());
}

void ByteWriter::matrix(const Eigen::MatrixXd& m) {
  u64(static_cast<std::uint64_t>(m.rows()));
  u64(static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) f64(m(r, c));
}

void ByteWriter::vector(const Eigen::VectorXd& v) {
  u64(static_cast<std::uint64_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) f64(v[i]);
}

void ByteWriter::block(const ByteWriter& payload) {
  u64(payload.bytes().size());
  raw(payload.bytes());
}

std::span<const std::uint8_t> ByteReader::raw(std::size_t n) {
  if (n > remaining()) throw Error("unexpected end of data");
  auto out = bytes_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint16_t ByteReader::u16() {
  const auto b = raw(2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t ByteReader::u32() {
  const auto b = raw(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t ByteReader::u64() {
  const auto b = raw(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::string ByteReader::str() {
  const auto n = u64();
  const auto b = raw(n);
  return std::string(b.begin(), b.end());
}

Eigen::MatrixXd ByteReader::matrix() {
  const auto rows = u64();
  const auto cols = u64();
  if (cols != 0 && rows > remaining() / 8 / cols) throw Error("unexpected end of data");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = f64();
  return m;
}

Eigen::VectorXd ByteReader::vector() {
  const auto n = u64();
  if (n > remaining() / 8) throw Error("unexpected end of data");
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = f64();
  return v;
}

ByteReader ByteReader::block() { return ByteReader(raw(u64())); }

void write_config(ByteWriter& out, const PipelineConfig& c) {
  out.f64(c.preprocess.scale);
  out.u8(static_cast<std::uint8_t>(c.preprocess.filter));
  out.u8(c.preprocess.roi);
  out.u8(c.preprocess.clahe);
  out.i64(c.preprocess.clahe_params.tiles_x);
  out.i64(c.preprocess.clahe_params.tiles_y);
  out.f64(c.preprocess.clahe_params.clip);

  out.u8(c.augment);

  out.u8(static_cast<std::uint8_t>(c.extract.kind));
  out.u8(static_cast<std::uint8_t>(c.extract.lbp.variant));
  out.i64(c.extract.lbp.block_rows);
  out.i64(c.extract.lbp.block_cols);
  out.u64(c.extract.convnet.layers.size());
  for (const ConvLayerConfig& l : c.extract.convnet.layers) {
    out.i64(l.num_filters);
    out.i64(l.filter_size);
    out.i64(l.pool_size);
    out.i64(l.pool_stride);
    out.i64(l.lcn_window);
    out.u64(l.seed);
  }

  out.f64(c.transform.pca_fraction);
  out.u8(c.transform.whiten);

  out.f64(c.classify.C);
  out.u8(c.classify.gamma.has_value());
  out.f64(c.classify.gamma.value_or(0.0));
  out.f64(c.classify.tol);
  out.u64(c.classify.max_iterations);

  out.u64(c.seed);
}

namespace {

template <typename Enum>
Enum read_enum(ByteReader& in, int count) {
  const int v = in.u8();
  if (v >= count) throw Error("invalid enumeration value in model");
  return static_cast<Enum>(v);
}

int read_int(ByteReader& in) {
  const auto v = in.i64();
  if (v < -(1LL << 31) || v > (1LL << 31) - 1) throw Error("integer out of range in model");
  return static_cast<int>(v);
}

}  // namespace

PipelineConfig read_config(ByteReader& in) {
  PipelineConfig c;
  c.preprocess.scale = in.f64();
  c.preprocess.filter = read_enum<FrequencyFilter>(in, 3);
  c.preprocess.roi = in.u8() != 0;
  c.preprocess.clahe = in.u8() != 0;
  c.preprocess.clahe_params.tiles_x = read_int(in);
  c.preprocess.clahe_params.tiles_y = read_int(in);
  c.preprocess.clahe_params.clip = in.f64();

  c.augment = in.u8() != 0;

  c.extract.kind = read_enum<ExtractorKind>(in, 2);
  c.extract.lbp.variant = read_enum<LbpVariant>(in, 2);
  c.extract.lbp.block_rows = read_int(in);
  c.extract.lbp.block_cols = read_int(in);
  const auto layers = in.u64();
  if (layers > kMaxConvLayers) throw Error("too many convnet layers in model");
  for (std::uint64_t i = 0; i < layers; ++i) {
    ConvLayerConfig l;
    l.num_filters = read_int(in);
    l.filter_size = read_int(in);
    l.pool_size = read_int(in);
    l.pool_stride = read_int(in);
    l.lcn_window = read_int(in);
    l.seed = in.u64();
    c.extract.convnet.layers.push_back(l);
  }

  c.transform.pca_fraction = in.f64();
  c.transform.whiten = in.u8() != 0;

  c.classify.C = in.f64();
  const bool has_gamma = in.u8() != 0;
  const double gamma = in.f64();
  if (has_gamma) c.classify.gamma = gamma;
  c.classify.tol = in.f64();
  c.classify.max_iterations = in.u64();

  c.seed = in.u64();
  return c;
}

std::vector<std::uint8_t> save_model(const TrainedPipeline& model) {
  ByteWriter out;
  out.raw(std::span(reinterpret_cast<const std::uint8_t*>(kModelMagic.data()), kModelMagic.size()));
  out.u16(kModelVersion);

  ByteWriter config;
  write_config(config, model.config);
  out.block(config);

  ByteWriter extractor;
  const auto& net = model.extractor.convnet();
  extractor.u64(net ? net->banks().size() : 0);
  if (net) {
    for (const FilterBank& bank : net->banks()) {
      extractor.i64(bank.num_filters);
      extractor.i64(bank.in_channels);
      extractor.i64(bank.filter_size);
      for (double w : bank.weights) extractor.f64(w);
    }
  }
  out.block(extractor);

  ByteWriter standardizer;
  standardizer.vector(model.standardizer.means);
  standardizer.vector(model.standardizer.stds);
  out.block(standardizer);

  ByteWriter pca;
  pca.vector(model.pca.mean);
  pca.matrix(model.pca.components);
  pca.vector(model.pca.component_variances);
  pca.u8(model.pca.whiten);
  pca.f64(model.pca.epsilon);
  out.block(pca);

  ByteWriter svm;
  svm.matrix(model.svm.support_vectors);
  svm.vector(model.svm.coefficients);
  svm.f64(model.svm.bias);
  svm.f64(model.svm.gamma);
  svm.f64(model.svm.C);
  out.block(svm);

  const Sha256Digest digest = sha256(out.bytes());
  out.raw(digest);
  return out.take();
}

TrainedPipeline load_model(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kFooter = 32;
  if (bytes.size() < kModelMagic.size() + 2 + kFooter ||
      std::memcmp(bytes.data(), kModelMagic.data(), kModelMagic.size()) != 0)
    throw Error("not a livecheck model file");
  const auto body = bytes.first(bytes.size() - kFooter);
  const Sha256Digest digest = sha256(body);
  if (std::memcmp(digest.data(), bytes.data() + body.size(), kFooter) != 0)
    throw Error("model file digest mismatch");

  ByteReader in(body);
  in.raw(kModelMagic.size());
  const std::uint16_t version = in.u16();
  if (version != kModelVersion)
    throw Error("unsupported model version " + std::to_string(version));

  ByteReader config_block = in.block();
  PipelineConfig config = read_config(config_block);

  ByteReader ext = in.block();
  const auto bank_count = ext.u64();
  std::optional<ConvNet> net;
  if (config.extract.kind == ExtractorKind::convnet) {
    if (bank_count != config.extract.convnet.layers.size())
      throw Error("filter bank count does not match configuration");
    std::vector<FilterBank> banks;
    for (std::uint64_t b = 0; b < bank_count; ++b) {
      FilterBank bank;
      bank.num_filters = read_int(ext);
      bank.in_channels = read_int(ext);
      bank.filter_size = read_int(ext);
      if (bank.num_filters < 1 || bank.in_channels < 1 || bank.filter_size < 1)
        throw Error("invalid filter bank in model");
      const std::size_t count = static_cast<std::size_t>(bank.num_filters) * bank.in_channels *
                                bank.filter_size * bank.filter_size;
      if (count > ext.remaining() / 8) throw Error("unexpected end of data");
      bank.weights.resize(count);
      for (double& w : bank.weights) w = ext.f64();
      banks.push_back(std::move(bank));
    }
    net.emplace(config.extract.convnet, std::move(banks));
  } else if (bank_count != 0) {
    throw Error("filter banks stored for a non-convnet extractor");
  }

  ByteReader std_block = in.block();
  Standardizer standardizer;
  standardizer.means = std_block.vector();
  standardizer.stds = std_block.vector();

  ByteReader pca_block = in.block();
  PcaModel pca;
  pca.mean = pca_block.vector();
  pca.components = pca_block.matrix();
  pca.component_variances = pca_block.vector();
  pca.whiten = pca_block.u8() != 0;
  pca.epsilon = pca_block.f64();

  ByteReader svm_block = in.block();
  SvmModel svm;
  svm.support_vectors = svm_block.matrix();
  svm.coefficients = svm_block.vector();
  svm.bias = svm_block.f64();
  svm.gamma = svm_block.f64();
  svm.C = svm_block.f64();

  if (!config_block.done() || !ext.done() || !std_block.done() || !pca_block.done() ||
      !svm_block.done() || !in.done())
    throw Error("trailing data in model file");
  if (standardizer.means.size() != standardizer.stds.size() ||
      pca.components.cols() != standardizer.means.size() ||
      pca.mean.size() != pca.components.cols() ||
      pca.component_variances.size() != pca.components.rows() ||
      svm.support_vectors.cols() != pca.components.rows() ||
      svm.coefficients.size() != svm.support_vectors.rows())
    throw Error("inconsistent stage dimensions in model file");

  FeatureExtractor extractor = net ? FeatureExtractor(config.extract, std::move(*net))
                                   : FeatureExtractor(config.extract, config.seed);
  return TrainedPipeline{std::move(config), std::move(extractor), std::move(standardizer),
                         std::move(pca), std::move(svm)};
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write " + path.string());
}

void save_model_file(const std::filesystem::path& path, const TrainedPipeline& model) {
  write_file_bytes(path, save_model(model));
}

TrainedPipeline load_model_file(const std::filesystem::path& path) {
  return load_model(read_file_bytes(path));
}

}  // namespace livecheck
