// workbench/container.h

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

#ifndef CJFE_WORKBENCH_CONTAINER_H_
#define CJFE_WORKBENCH_CONTAINER_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "encoders/model.h"
#include "segmenter/corpus.h"

namespace cjfe {

// Binary container: magic "CJFE" | u32 version | u64 header length | header
// JSON | payload. The header carries a directory (name, shape, offset, bytes,
// crc32) for every array; the payload is the little-endian float32 arrays
// concatenated in directory order (lexicographic by name). Save -> load ->
// save is byte-identical.
inline constexpr char kContainerMagic[4] = {'C', 'J', 'F', 'E'};
inline constexpr uint32_t kContainerVersion = 1;

struct NamedArray {
  std::string name;
  std::vector<int64_t> shape;
  std::vector<double> data;  // converted to/from f32 at the file boundary
  std::string kind = "param";  // "param" | "state" | "features"
};

// meta: caller's header fields; stored under "meta". Arrays are sorted by
// name before writing.
void WriteContainer(const std::string &path, const nlohmann::json &meta,
                    std::vector<NamedArray> arrays);

struct ContainerContents {
  nlohmann::json meta;
  std::vector<NamedArray> arrays;  // directory order
};

// Verifies magic, version, directory consistency and per-array CRC32.
ContainerContents ReadContainer(const std::string &path);

uint32_t Crc32(const void *data, size_t bytes);

// ----- Model checkpoints -----

// Optional per-corpus feature standardization recorded with the model so
// train and inference transform identically.
struct NormStats {
  bool enabled = false;
  std::vector<double> mean;
  std::vector<double> stddev;
};

void SaveCheckpoint(const std::string &path, const Model &model,
                    const std::string &config_digest,
                    const NormStats &norm = {});

struct LoadedCheckpoint {
  Model model;
  std::string config_digest;
  NormStats norm;
};

LoadedCheckpoint LoadCheckpoint(const std::string &path);

// ----- Feature caches -----

void SaveFeatureCache(const std::string &path,
                      const std::map<std::string, FeatureMatrix> &features);

std::map<std::string, FeatureMatrix> LoadFeatureCache(const std::string &path);

}  // namespace cjfe

#endif  // CJFE_WORKBENCH_CONTAINER_H_
