// encoders/model.h

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

#ifndef CJFE_ENCODERS_MODEL_H_
#define CJFE_ENCODERS_MODEL_H_

#include <span>
#include <vector>

#include "encoders/arch.h"
#include "gradcore/ops.h"
#include "gradcore/paramset.h"
#include "segmenter/windowing.h"
#include "util/matrix.h"

namespace cjfe {

// Shared convolutional encoder/decoder with a Gaussian latent. Encoder:
// conv 1x80 (valid, stride 1) -> conv 3x1 (same, stride 2) -> conv 3x1
// (same, stride 2) -> flatten -> fc -> linear mu / logvar heads; batch norm
// and leaky ReLU after every layer except the heads. Decoder mirrors it with
// transposed convolutions; the final layer is linear so outputs live in
// log-Mel space.
class Model {
 public:
  explicit Model(const ModelConfig &config);

  // Copying would alias the underlying parameter arrays; moving is fine.
  Model(const Model &) = delete;
  Model &operator=(const Model &) = delete;
  Model(Model &&) = default;
  Model &operator=(Model &&) = default;

  // He-normal weights, unit gammas, zero biases; both latent heads start at
  // zero so training begins exactly at the prior.
  void InitParams(uint64_t seed);

  struct Latent {
    Value mu;      // [B, K]
    Value logvar;  // [B, K]
  };

  struct LossParts {
    Value total;  // recon + kl_weight * kl
    Value recon;
    Value kl;     // unweighted
  };

  // input: [B, input_rows, feat_dim, 1]
  Latent Encode(const Value &input, BnMode mode);
  // z: [B, K] -> [B, output_rows, feat_dim, 1]
  Value Decode(const Value &z, BnMode mode);

  // Assembles the (encoder input, prediction target) pair for this model
  // kind from the given samples and evaluates the objective.
  LossParts Loss(std::span<const WindowSample *const> batch,
                 std::span<const double> noise, BnMode mode);

  // Posterior means for probing; infer-mode batch norm, deterministic.
  // Requires trained (or loaded) parameters. Result: one K-row per sample.
  Matrix EmbedWindows(std::span<const WindowSample *const> samples);
  Matrix EmbedWindows(const std::vector<WindowSample> &samples);

  enum class Side { kTargetX, kNeighbourY };
  static Side EncoderSide(ModelKind kind);
  static Side TargetSide(ModelKind kind);

  // Batch tensor [B, rows, feat, 1] from the chosen side of each sample.
  Value BatchInput(std::span<const WindowSample *const> batch, Side side) const;

  const ModelConfig &config() const { return config_; }
  ParamSet &params() { return params_; }
  const ParamSet &params() const { return params_; }
  StateSet &state() { return state_; }
  const StateSet &state() const { return state_; }

  int64_t ParameterCount() const { return params_.TotalElements(); }
  double EffectiveKlWeight() const;

  bool has_trained_params() const { return has_trained_params_; }
  void MarkTrained() { has_trained_params_ = true; }

 private:
  struct Lens {
    int64_t t1, t2, t3, flat;
  };
  static Lens CalcLens(int64_t rows, const ArchConfig &arch);

  BnState Bn(const std::string &name) const;
  Value P(const std::string &name) { return params_.Get(name); }

  ModelConfig config_;
  Lens enc_lens_, dec_lens_;
  ParamSet params_;
  StateSet state_;
  std::vector<std::pair<std::string, int>> init_plan_;  // 0 zero, 1 he, 2 one
  bool has_trained_params_ = false;
};

}  // namespace cjfe

#endif  // CJFE_ENCODERS_MODEL_H_
