// encoders/arch.h

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

#ifndef CJFE_ENCODERS_ARCH_H_
#define CJFE_ENCODERS_ARCH_H_

#include <array>
#include <cstdint>
#include <string>

namespace cjfe {

// Which joint-factor configuration a model implements. The pair
// (encoder input, prediction target) is (X, X) for the plain VAE,
// (Y, X) for the synthesis encoder and (X, Y) for the analysis encoder.
enum class ModelKind { kVae, kCjfs, kCjfa };

std::string ToString(ModelKind kind);
ModelKind ModelKindFromString(const std::string &s);

struct ArchConfig {
  int64_t embed_dim = 150;  // K
  std::array<int64_t, 3> conv_channels = {64, 128, 256};
  int64_t fc_units = 512;
  double leaky_slope = 0.01;
  double bn_epsilon = 1e-5;
  double bn_momentum = 0.99;
  // Weight on the KL term. <= 0 selects the unit-variance Gaussian
  // likelihood scale, 2 / (rows * 80) of the prediction target.
  double kl_weight = 0.0;

  void Validate() const;
};

// Resolved per-model geometry: row counts depend on the model kind and the
// window configuration; stored in checkpoints so inference needs no guessing.
struct ModelConfig {
  ModelKind kind = ModelKind::kVae;
  ArchConfig arch;
  int64_t input_rows = 10;   // rows consumed by the encoder
  int64_t output_rows = 10;  // rows produced by the decoder
  int64_t feat_dim = 80;

  void Validate() const;
};

ModelConfig MakeModelConfig(ModelKind kind, int64_t target_len,
                            int64_t neighbour_len, const ArchConfig &arch);

}  // namespace cjfe

#endif  // CJFE_ENCODERS_ARCH_H_
