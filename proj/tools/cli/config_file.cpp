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

#include "cli/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "livecheck/error.hpp"

namespace livecheck::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

using Entries = std::map<std::string, std::string>;  // "section.key" -> raw value

const std::map<std::string, std::set<std::string>> kSchema{
    {"preprocess", {"scale", "filter", "roi", "clahe", "clahe_tiles", "clahe_clip"}},
    {"augment", {"enabled"}},
    {"extract", {"type", "lbp_variant", "lbp_blocks", "convnet"}},
    {"transform", {"pca_fraction", "whiten"}},
    {"classify", {"C", "gamma", "tol", "max_iterations"}},
    {"search", {"seed", "threads", "use_cache", "cache_memory_mb", "cache_disk_mb"}},
};

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error("invalid value '" + value + "' for key '" + key + "'");
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  const auto u = parse_u64(key, v);
  if (u > 1'000'000) bad_value(key, v);
  return static_cast<int>(u);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  bad_value(key, v);
}

std::pair<int, int> parse_grid_dims(const std::string& key, const std::string& v) {
  const auto parts = split(v, 'x');
  if (parts.size() != 2) bad_value(key, v);
  return {parse_int(key, parts[0]), parse_int(key, parts[1])};
}

// filters:size:pool:stride:lcn per layer, layers separated by '/'.
ConvNetConfig parse_architecture(const std::string& key, const std::string& v) {
  ConvNetConfig cfg;
  for (const std::string& layer : split(v, '/')) {
    const auto f = split(layer, ':');
    if (f.size() != 5) bad_value(key, v);
    ConvLayerConfig l;
    l.num_filters = parse_int(key, f[0]);
    l.filter_size = parse_int(key, f[1]);
    l.pool_size = parse_int(key, f[2]);
    l.pool_stride = parse_int(key, f[3]);
    l.lcn_window = parse_int(key, f[4]);
    if (l.num_filters < 1 || l.filter_size < 1 || l.filter_size % 2 == 0 || l.pool_size < 1 ||
        l.pool_stride < 1 || (l.lcn_window > 1 && l.lcn_window % 2 == 0))
      bad_value(key, v);
    cfg.layers.push_back(l);
  }
  if (cfg.layers.empty() || cfg.layers.size() > kMaxConvLayers) bad_value(key, v);
  return cfg;
}

class Reader {
 public:
  explicit Reader(Entries entries) : entries_(std::move(entries)) {}

  std::vector<std::string> list(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    const std::string raw = it == entries_.end() ? fallback : it->second;
    auto values = split(raw, ',');
    for (const auto& v : values)
      if (v.empty()) bad_value(key, raw);
    return values;
  }

  std::string single(const std::string& key, const std::string& fallback) const {
    const auto values = list(key, fallback);
    if (values.size() != 1) throw Error("key '" + key + "' takes a single value");
    return values.front();
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

 private:
  Entries entries_;
};

template <typename T>
void dedupe(std::vector<T>& values) {
  std::vector<T> unique;
  for (const T& v : values)
    if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(v);
  values = std::move(unique);
}

template <typename T, typename Fn>
std::vector<T> map_values(const std::vector<std::string>& raw, Fn&& fn) {
  std::vector<T> out;
  for (const auto& v : raw) out.push_back(fn(v));
  return out;
}

}  // namespace

ConfigFile parse_config(std::string_view text) {
  Entries entries;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw Error("malformed section header on line " + std::to_string(line_no));
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (!kSchema.count(section)) throw Error("unknown section '" + section + "'");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error("expected key = value on line " + std::to_string(line_no));
    if (section.empty()) throw Error("key outside of a section on line " + std::to_string(line_no));
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string full = section + "." + key;
    if (!kSchema.at(section).count(key)) throw Error("unknown key '" + full + "'");
    if (entries.count(full)) throw Error("duplicate key '" + full + "'");
    entries[full] = trim(std::string_view(t).substr(eq + 1));
  }

  const Reader r(std::move(entries));
  ConfigFile cfg;
  GridSpec& g = cfg.grid;

  if (!r.has("search.seed")) throw Error("missing key 'search.seed'");
  g.seed = parse_u64("search.seed", r.single("search.seed", ""));
  cfg.threads = static_cast<unsigned>(parse_int("search.threads", r.single("search.threads", "0")));
  cfg.use_cache = parse_bool("search.use_cache", r.single("search.use_cache", "true"));
  cfg.cache_memory_mb = parse_u64("search.cache_memory_mb", r.single("search.cache_memory_mb", "1024"));
  cfg.cache_disk_mb = parse_u64("search.cache_disk_mb", r.single("search.cache_disk_mb", "4096"));

  // Preprocessing grid.
  const auto scales = map_values<double>(r.list("preprocess.scale", "1"), [](const std::string& v) {
    const double s = parse_double("preprocess.scale", v);
    if (!(s > 0.0 && s <= 1.0)) bad_value("preprocess.scale", v);
    return s;
  });
  const auto filters =
      map_values<FrequencyFilter>(r.list("preprocess.filter", "none"), [](const std::string& v) {
        if (v == "none") return FrequencyFilter::none;
        if (v == "lowpass") return FrequencyFilter::lowpass;
        if (v == "highpass") return FrequencyFilter::highpass;
        bad_value("preprocess.filter", v);
      });
  const auto rois = map_values<bool>(r.list("preprocess.roi", "false"),
                                     [](const std::string& v) { return parse_bool("preprocess.roi", v); });
  const auto clahes = map_values<bool>(r.list("preprocess.clahe", "false"), [](const std::string& v) {
    return parse_bool("preprocess.clahe", v);
  });
  const auto tiles = map_values<std::pair<int, int>>(
      r.list("preprocess.clahe_tiles", "8x8"), [](const std::string& v) {
        const auto d = parse_grid_dims("preprocess.clahe_tiles", v);
        if (d.first < 1 || d.second < 1) bad_value("preprocess.clahe_tiles", v);
        return d;
      });
  const auto clips = map_values<double>(r.list("preprocess.clahe_clip", "2"), [](const std::string& v) {
    if (v == "inf") return kNoClip;
    const double c = parse_double("preprocess.clahe_clip", v);
    if (!(c > 0.0)) bad_value("preprocess.clahe_clip", v);
    return c;
  });
  g.preprocess.clear();
  for (double s : scales)
    for (FrequencyFilter f : filters)
      for (bool roi : rois)
        for (bool use_clahe : clahes)
          for (const auto& [tx, ty] : tiles)
            for (double clip : clips) {
              PreprocessConfig p;
              p.scale = s;
              p.filter = f;
              p.roi = roi;
              p.clahe = use_clahe;
              if (use_clahe) p.clahe_params = {tx, ty, clip};
              g.preprocess.push_back(p);
            }
  dedupe(g.preprocess);

  g.augment = map_values<bool>(r.list("augment.enabled", "false"),
                               [](const std::string& v) { return parse_bool("augment.enabled", v); });
  dedupe(g.augment);

  // Extractor grid: each type contributes its own candidates. Every key is
  // validated even when its type is not selected.
  std::vector<LbpConfig> lbp_candidates;
  for (const std::string& variant : r.list("extract.lbp_variant", "uniform")) {
    if (variant != "original" && variant != "uniform") bad_value("extract.lbp_variant", variant);
    for (const std::string& blocks : r.list("extract.lbp_blocks", "1x1")) {
      const auto [rows, cols] = parse_grid_dims("extract.lbp_blocks", blocks);
      if (rows < 1 || cols < 1) bad_value("extract.lbp_blocks", blocks);
      lbp_candidates.push_back(
          {variant == "original" ? LbpVariant::original : LbpVariant::uniform, rows, cols});
    }
  }
  std::vector<ConvNetConfig> convnet_candidates;
  if (r.has("extract.convnet"))
    for (const std::string& arch : r.list("extract.convnet", ""))
      convnet_candidates.push_back(parse_architecture("extract.convnet", arch));

  g.extract.clear();
  for (const std::string& type : r.list("extract.type", "lbp")) {
    if (type == "lbp") {
      for (const LbpConfig& lbp : lbp_candidates) {
        ExtractorConfig e;
        e.kind = ExtractorKind::lbp;
        e.lbp = lbp;
        g.extract.push_back(e);
      }
    } else if (type == "convnet") {
      if (convnet_candidates.empty()) throw Error("missing key 'extract.convnet'");
      for (const ConvNetConfig& net : convnet_candidates) {
        ExtractorConfig e;
        e.kind = ExtractorKind::convnet;
        e.convnet = net;
        g.extract.push_back(e);
      }
    } else {
      bad_value("extract.type", type);
    }
  }
  dedupe(g.extract);

  g.transform.clear();
  for (const std::string& f : r.list("transform.pca_fraction", "0.2")) {
    const double fraction = parse_double("transform.pca_fraction", f);
    if (!(fraction > 0.0 && fraction <= 1.0)) bad_value("transform.pca_fraction", f);
    for (const std::string& w : r.list("transform.whiten", "true"))
      g.transform.push_back({fraction, parse_bool("transform.whiten", w)});
  }
  dedupe(g.transform);

  g.classify.clear();
  for (const std::string& c : r.list("classify.C", "10")) {
    const double C = parse_double("classify.C", c);
    if (!(C > 0.0)) bad_value("classify.C", c);
    for (const std::string& gm : r.list("classify.gamma", "auto")) {
      std::optional<double> gamma;
      if (gm != "auto") {
        gamma = parse_double("classify.gamma", gm);
        if (!(*gamma > 0.0)) bad_value("classify.gamma", gm);
      }
      for (const std::string& t : r.list("classify.tol", "0.001")) {
        const double tol = parse_double("classify.tol", t);
        if (!(tol > 0.0)) bad_value("classify.tol", t);
        for (const std::string& it : r.list("classify.max_iterations", "10000000")) {
          const auto iterations = parse_u64("classify.max_iterations", it);
          if (iterations == 0) bad_value("classify.max_iterations", it);
          g.classify.push_back({C, gamma, tol, iterations});
        }
      }
    }
  }
  dedupe(g.classify);
  return cfg;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace livecheck::cli
