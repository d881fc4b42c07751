// workbench/container.cc

// Copyright 2026  CJFE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "workbench/container.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "util/common.h"
#include "workbench/runconfig.h"

namespace cjfe {

using nlohmann::json;

namespace {

struct Crc32Table {
  uint32_t t[256];
  Crc32Table() {
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
  }
};

std::vector<char> FloatBytes(const std::vector<double> &data) {
  std::vector<char> bytes(data.size() * 4);
  for (size_t i = 0; i < data.size(); ++i) {
    float f = static_cast<float>(data[i]);
    std::memcpy(bytes.data() + 4 * i, &f, 4);
  }
  return bytes;
}

std::string HexU32(uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08x", v);
  return buf;
}

}  // namespace

uint32_t Crc32(const void *data, size_t bytes) {
  static const Crc32Table table;
  const unsigned char *p = static_cast<const unsigned char *>(data);
  uint32_t c = 0xffffffffu;
  for (size_t i = 0; i < bytes; ++i) c = table.t[(c ^ p[i]) & 0xffu] ^ (c >> 8);
  return c ^ 0xffffffffu;
}

void WriteContainer(const std::string &path, const json &meta,
                    std::vector<NamedArray> arrays) {
  std::sort(arrays.begin(), arrays.end(),
            [](const NamedArray &a, const NamedArray &b) { return a.name < b.name; });
  for (size_t i = 1; i < arrays.size(); ++i) {
    if (arrays[i].name == arrays[i - 1].name) {
      throw ContractError("container: duplicate array name '" + arrays[i].name + "'");
    }
  }

  json dir = json::array();
  std::vector<std::vector<char>> payloads;
  uint64_t offset = 0;
  for (const NamedArray &arr : arrays) {
    int64_t count = 1;
    for (int64_t d : arr.shape) count *= d;
    if (count != static_cast<int64_t>(arr.data.size())) {
      throw DimensionError("container: array '" + arr.name +
                           "' data does not match its shape");
    }
    std::vector<char> bytes = FloatBytes(arr.data);
    json entry;
    entry["name"] = arr.name;
    entry["shape"] = arr.shape;
    entry["offset"] = offset;
    entry["bytes"] = bytes.size();
    entry["crc32"] = HexU32(Crc32(bytes.data(), bytes.size()));
    entry["kind"] = arr.kind;
    dir.push_back(std::move(entry));
    offset += bytes.size();
    payloads.push_back(std::move(bytes));
  }

  json header;
  header["meta"] = meta;
  header["arrays"] = std::move(dir);
  const std::string header_str = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write container '" + path + "'");
  out.write(kContainerMagic, 4);
  uint32_t version = kContainerVersion;
  out.write(reinterpret_cast<const char *>(&version), 4);
  uint64_t header_len = header_str.size();
  out.write(reinterpret_cast<const char *>(&header_len), 8);
  out.write(header_str.data(), header_str.size());
  for (const auto &bytes : payloads) out.write(bytes.data(), bytes.size());
  if (!out) throw IoError("short write to container '" + path + "'");
}

ContainerContents ReadContainer(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open container '" + path + "'");
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kContainerMagic, 4) != 0) {
    throw FormatError("'" + path + "': bad magic (not a CJFE container)");
  }
  uint32_t version;
  std::memcpy(&version, bytes.data() + 4, 4);
  if (version != kContainerVersion) {
    throw FormatError("'" + path + "': unsupported container version " +
                      std::to_string(version));
  }
  uint64_t header_len;
  std::memcpy(&header_len, bytes.data() + 8, 8);
  if (16 + header_len > bytes.size()) {
    throw FormatError("'" + path + "': truncated header");
  }
  json header;
  try {
    header = json::parse(bytes.begin() + 16, bytes.begin() + 16 + header_len);
  } catch (const json::exception &e) {
    throw FormatError("'" + path + "': corrupt header: " + e.what());
  }

  ContainerContents contents;
  contents.meta = header.value("meta", json::object());
  const char *payload = bytes.data() + 16 + header_len;
  const uint64_t payload_bytes = bytes.size() - 16 - header_len;
  for (const json &entry : header.at("arrays")) {
    NamedArray arr;
    arr.name = entry.at("name").get<std::string>();
    arr.shape = entry.at("shape").get<std::vector<int64_t>>();
    arr.kind = entry.value("kind", "param");
    const uint64_t offset = entry.at("offset").get<uint64_t>();
    const uint64_t nbytes = entry.at("bytes").get<uint64_t>();
    if (offset + nbytes > payload_bytes) {
      throw FormatError("'" + path + "': truncated payload (array '" + arr.name +
                        "')");
    }
    const uint32_t crc = Crc32(payload + offset, nbytes);
    if (HexU32(crc) != entry.at("crc32").get<std::string>()) {
      throw FormatError("'" + path + "': checksum mismatch for array '" +
                        arr.name + "'");
    }
    arr.data.resize(nbytes / 4);
    for (size_t i = 0; i < arr.data.size(); ++i) {
      float f;
      std::memcpy(&f, payload + offset + 4 * i, 4);
      arr.data[i] = f;
    }
    contents.arrays.push_back(std::move(arr));
  }
  return contents;
}

void SaveCheckpoint(const std::string &path, const Model &model,
                    const std::string &config_digest, const NormStats &norm) {
  const ModelConfig &cfg = model.config();
  json meta;
  meta["content"] = "model";
  meta["model_kind"] = ToString(cfg.kind);
  meta["arch"] = ArchToJson(cfg.arch);
  meta["input_rows"] = cfg.input_rows;
  meta["output_rows"] = cfg.output_rows;
  meta["feat_dim"] = cfg.feat_dim;
  meta["parameter_count"] = model.ParameterCount();
  meta["config_digest"] = config_digest;
  meta["standardize"] = norm.enabled;

  std::vector<NamedArray> arrays;
  for (const auto &[name, v] : model.params()) {
    NamedArray arr;
    arr.name = name;
    arr.shape = v.shape().dims();
    arr.data.assign(v.Data().begin(), v.Data().end());
    arr.kind = "param";
    arrays.push_back(std::move(arr));
  }
  for (const auto &[name, vec] : model.state()) {
    NamedArray arr;
    arr.name = name;
    arr.shape = {static_cast<int64_t>(vec->size())};
    arr.data = *vec;
    arr.kind = "state";
    arrays.push_back(std::move(arr));
  }
  if (norm.enabled) {
    arrays.push_back({"norm.mean",
                      {static_cast<int64_t>(norm.mean.size())},
                      norm.mean,
                      "state"});
    arrays.push_back({"norm.stddev",
                      {static_cast<int64_t>(norm.stddev.size())},
                      norm.stddev,
                      "state"});
  }
  WriteContainer(path, meta, std::move(arrays));
}

LoadedCheckpoint LoadCheckpoint(const std::string &path) {
  ContainerContents contents = ReadContainer(path);
  if (contents.meta.value("content", "") != "model") {
    throw FormatError("'" + path + "': container does not hold a model");
  }
  ModelConfig cfg;
  cfg.kind = ModelKindFromString(contents.meta.at("model_kind").get<std::string>());
  cfg.arch = ArchFromJson(contents.meta.at("arch"));
  cfg.input_rows = contents.meta.at("input_rows").get<int64_t>();
  cfg.output_rows = contents.meta.at("output_rows").get<int64_t>();
  cfg.feat_dim = contents.meta.at("feat_dim").get<int64_t>();

  LoadedCheckpoint loaded{Model(cfg),
                          contents.meta.value("config_digest", ""),
                          NormStats{}};
  loaded.norm.enabled = contents.meta.value("standardize", false);

  size_t params_seen = 0, states_seen = 0;
  for (NamedArray &arr : contents.arrays) {
    if (arr.name == "norm.mean") {
      loaded.norm.mean = std::move(arr.data);
      continue;
    }
    if (arr.name == "norm.stddev") {
      loaded.norm.stddev = std::move(arr.data);
      continue;
    }
    if (arr.kind == "param") {
      if (!loaded.model.params().Has(arr.name)) {
        throw FormatError("'" + path + "': checkpoint parameter '" + arr.name +
                          "' does not exist in the declared architecture");
      }
      Value &v = loaded.model.params().Get(arr.name);
      if (v.shape().dims() != arr.shape) {
        throw FormatError("'" + path + "': parameter '" + arr.name +
                          "' shape mismatch against the declared architecture");
      }
      std::copy(arr.data.begin(), arr.data.end(), v.MutableData().begin());
      ++params_seen;
    } else {
      auto vec = loaded.model.state().Get(arr.name);  // throws if unknown
      if (vec->size() != arr.data.size()) {
        throw FormatError("'" + path + "': state '" + arr.name +
                          "' length mismatch");
      }
      *vec = std::move(arr.data);
      ++states_seen;
    }
  }
  if (params_seen != loaded.model.params().size()) {
    throw FormatError("'" + path + "': checkpoint is missing parameters (" +
                      std::to_string(params_seen) + " of " +
                      std::to_string(loaded.model.params().size()) + ")");
  }
  if (loaded.norm.enabled &&
      (loaded.norm.mean.empty() || loaded.norm.stddev.empty())) {
    throw FormatError("'" + path + "': standardize flag set but stats missing");
  }
  loaded.model.MarkTrained();
  return loaded;
}

void SaveFeatureCache(const std::string &path,
                      const std::map<std::string, FeatureMatrix> &features) {
  if (features.empty()) throw DataError("feature cache: nothing to write");
  json meta;
  meta["content"] = "features";
  meta["frame_shift"] = features.begin()->second.frame_shift;
  meta["sample_rate"] = features.begin()->second.sample_rate;
  std::vector<NamedArray> arrays;
  for (const auto &[id, feat] : features) {
    if (feat.frame_shift != features.begin()->second.frame_shift ||
        feat.sample_rate != features.begin()->second.sample_rate) {
      throw DataError("feature cache: utterance '" + id +
                      "' disagrees on frame shift or sample rate");
    }
    NamedArray arr;
    arr.name = id;
    arr.shape = {feat.frames.rows, feat.frames.cols};
    arr.data = feat.frames.data;
    arr.kind = "features";
    arrays.push_back(std::move(arr));
  }
  WriteContainer(path, meta, std::move(arrays));
}

std::map<std::string, FeatureMatrix> LoadFeatureCache(const std::string &path) {
  ContainerContents contents = ReadContainer(path);
  if (contents.meta.value("content", "") != "features") {
    throw FormatError("'" + path + "': container does not hold features");
  }
  const double frame_shift = contents.meta.at("frame_shift").get<double>();
  const int sample_rate = contents.meta.at("sample_rate").get<int>();
  std::map<std::string, FeatureMatrix> features;
  for (NamedArray &arr : contents.arrays) {
    if (arr.shape.size() != 2 || arr.shape[1] != 80) {
      throw FormatError("'" + path + "': feature array '" + arr.name +
                        "' is not T x 80");
    }
    FeatureMatrix feat;
    feat.utterance_id = arr.name;
    feat.frame_shift = frame_shift;
    feat.sample_rate = sample_rate;
    feat.frames = Matrix(arr.shape[0], arr.shape[1]);
    feat.frames.data = std::move(arr.data);
    for (double x : feat.frames.data) {
      if (!std::isfinite(x)) {
        throw FormatError("'" + path + "': non-finite value in features of '" +
                          arr.name + "'");
      }
    }
    features.emplace(arr.name, std::move(feat));
  }
  return features;
}

}  // namespace cjfe
