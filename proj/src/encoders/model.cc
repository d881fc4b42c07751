// encoders/model.cc

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

#include "encoders/model.h"

#include <algorithm>
#include <cmath>

#include "util/common.h"
#include "util/rng.h"

namespace cjfe {

namespace {
constexpr int kInitZero = 0;
constexpr int kInitHe = 1;
constexpr int kInitOne = 2;
constexpr int64_t kEmbedChunk = 256;
}  // namespace

std::string ToString(ModelKind kind) {
  switch (kind) {
    case ModelKind::kVae: return "vae";
    case ModelKind::kCjfs: return "cjfs";
    case ModelKind::kCjfa: return "cjfa";
  }
  throw ContractError("unknown model kind");
}

ModelKind ModelKindFromString(const std::string &s) {
  if (s == "vae") return ModelKind::kVae;
  if (s == "cjfs") return ModelKind::kCjfs;
  if (s == "cjfa") return ModelKind::kCjfa;
  throw ContractError("unknown model kind '" + s + "' (expected vae|cjfs|cjfa)");
}

void ArchConfig::Validate() const {
  if (embed_dim < 1) throw ContractError("arch: embed_dim must be >= 1");
  for (int64_t c : conv_channels) {
    if (c < 1) throw ContractError("arch: conv channels must be >= 1");
  }
  if (fc_units < 1) throw ContractError("arch: fc_units must be >= 1");
  if (!(leaky_slope > 0.0 && leaky_slope < 1.0)) {
    throw ContractError("arch: leaky_slope must be in (0, 1)");
  }
  if (!(bn_epsilon > 0.0)) throw ContractError("arch: bn_epsilon must be > 0");
  if (!(bn_momentum > 0.0 && bn_momentum < 1.0)) {
    throw ContractError("arch: bn_momentum must be in (0, 1)");
  }
}

void ModelConfig::Validate() const {
  arch.Validate();
  if (input_rows < 1 || output_rows < 1) {
    throw ContractError("model: row counts must be >= 1");
  }
  if (feat_dim != 80) {
    throw ContractError("model: feature dimension must be 80, got " +
                        std::to_string(feat_dim));
  }
}

ModelConfig MakeModelConfig(ModelKind kind, int64_t target_len,
                            int64_t neighbour_len, const ArchConfig &arch) {
  ModelConfig cfg;
  cfg.kind = kind;
  cfg.arch = arch;
  switch (kind) {
    case ModelKind::kVae:
      cfg.input_rows = target_len;
      cfg.output_rows = target_len;
      break;
    case ModelKind::kCjfs:
      cfg.input_rows = 2 * neighbour_len;
      cfg.output_rows = target_len;
      break;
    case ModelKind::kCjfa:
      cfg.input_rows = target_len;
      cfg.output_rows = 2 * neighbour_len;
      break;
  }
  cfg.Validate();
  return cfg;
}

Model::Lens Model::CalcLens(int64_t rows, const ArchConfig &arch) {
  Lens l;
  l.t1 = rows;                // 1x80 valid conv, stride 1
  l.t2 = (l.t1 + 1) / 2;      // 3x1 same conv, stride 2
  l.t3 = (l.t2 + 1) / 2;
  l.flat = l.t3 * arch.conv_channels[2];
  return l;
}

Model::Model(const ModelConfig &config) : config_(config) {
  config_.Validate();
  const ArchConfig &a = config_.arch;
  enc_lens_ = CalcLens(config_.input_rows, a);
  dec_lens_ = CalcLens(config_.output_rows, a);
  const int64_t ch0 = a.conv_channels[0], ch1 = a.conv_channels[1],
                ch2 = a.conv_channels[2];
  const int64_t fd = config_.feat_dim;

  auto param = [&](const std::string &name, const Shape &shape, int init) {
    params_.Create(name, shape);
    init_plan_.emplace_back(name, init);
  };
  auto bn = [&](const std::string &name, int64_t channels) {
    param(name + ".gamma", Shape{channels}, kInitOne);
    param(name + ".beta", Shape{channels}, kInitZero);
    state_.Create(name + ".running_mean", channels, 0.0);
    state_.Create(name + ".running_var", channels, 1.0);
    state_.Create(name + ".batches", 1, 0.0);
  };

  param("enc.conv1.kernel", Shape{1, fd, 1, ch0}, kInitHe);
  bn("enc.bn1", ch0);
  param("enc.conv2.kernel", Shape{3, 1, ch0, ch1}, kInitHe);
  bn("enc.bn2", ch1);
  param("enc.conv3.kernel", Shape{3, 1, ch1, ch2}, kInitHe);
  bn("enc.bn3", ch2);
  param("enc.fc.weight", Shape{enc_lens_.flat, a.fc_units}, kInitHe);
  param("enc.fc.bias", Shape{a.fc_units}, kInitZero);
  bn("enc.bn4", a.fc_units);
  param("enc.mu.weight", Shape{a.fc_units, a.embed_dim}, kInitZero);
  param("enc.mu.bias", Shape{a.embed_dim}, kInitZero);
  param("enc.logvar.weight", Shape{a.fc_units, a.embed_dim}, kInitZero);
  param("enc.logvar.bias", Shape{a.embed_dim}, kInitZero);

  param("dec.fc1.weight", Shape{a.embed_dim, a.fc_units}, kInitHe);
  param("dec.fc1.bias", Shape{a.fc_units}, kInitZero);
  bn("dec.bn1", a.fc_units);
  param("dec.fc2.weight", Shape{a.fc_units, dec_lens_.flat}, kInitHe);
  param("dec.fc2.bias", Shape{dec_lens_.flat}, kInitZero);
  bn("dec.bn2", ch2);
  param("dec.deconv1.kernel", Shape{3, 1, ch1, ch2}, kInitHe);
  bn("dec.bn3", ch1);
  param("dec.deconv2.kernel", Shape{3, 1, ch0, ch1}, kInitHe);
  bn("dec.bn4", ch0);
  param("dec.deconv3.kernel", Shape{1, fd, 1, ch0}, kInitHe);
  param("dec.deconv3.bias", Shape{1}, kInitZero);
}

void Model::InitParams(uint64_t seed) {
  Rng rng = Rng::Derive(seed, 0x1a17);
  for (const auto &[name, kind] : init_plan_) {
    Value &v = params_.Get(name);
    std::span<double> data = v.MutableData();
    switch (kind) {
      case kInitZero:
        std::fill(data.begin(), data.end(), 0.0);
        break;
      case kInitOne:
        std::fill(data.begin(), data.end(), 1.0);
        break;
      case kInitHe: {
        const Shape &s = v.shape();
        int64_t fan_in = 1;
        for (int64_t ax = 0; ax + 1 < s.NumAxes(); ++ax) fan_in *= s.Dim(ax);
        const double std = std::sqrt(2.0 / fan_in);
        for (double &x : data) x = rng.Normal(0.0, std);
        break;
      }
    }
  }
}

BnState Model::Bn(const std::string &name) const {
  BnState s;
  s.running_mean = state_.Get(name + ".running_mean");
  s.running_var = state_.Get(name + ".running_var");
  s.batches_tracked = state_.Get(name + ".batches");
  return s;
}

Model::Latent Model::Encode(const Value &input, BnMode mode) {
  const Shape &s = input.shape();
  if (s.NumAxes() != 4 || s.Dim(1) != config_.input_rows ||
      s.Dim(2) != config_.feat_dim || s.Dim(3) != 1) {
    throw DimensionError("encode: expected [B, " +
                         std::to_string(config_.input_rows) + ", " +
                         std::to_string(config_.feat_dim) + ", 1], got " +
                         s.ToString());
  }
  const ArchConfig &a = config_.arch;
  const double slope = a.leaky_slope;
  const double mom = a.bn_momentum, eps = a.bn_epsilon;

  Value h = Conv2d(input, P("enc.conv1.kernel"), 1, 1, PadMode::kValid);
  h = LeakyRelu(BatchNorm(h, P("enc.bn1.gamma"), P("enc.bn1.beta"), Bn("enc.bn1"),
                          mode, mom, eps), slope);
  h = Conv2d(h, P("enc.conv2.kernel"), 2, 1, PadMode::kSame);
  h = LeakyRelu(BatchNorm(h, P("enc.bn2.gamma"), P("enc.bn2.beta"), Bn("enc.bn2"),
                          mode, mom, eps), slope);
  h = Conv2d(h, P("enc.conv3.kernel"), 2, 1, PadMode::kSame);
  h = LeakyRelu(BatchNorm(h, P("enc.bn3.gamma"), P("enc.bn3.beta"), Bn("enc.bn3"),
                          mode, mom, eps), slope);
  h = Reshape(h, Shape{s.Dim(0), enc_lens_.flat});
  h = Dense(h, P("enc.fc.weight"), P("enc.fc.bias"));
  h = LeakyRelu(BatchNorm(h, P("enc.bn4.gamma"), P("enc.bn4.beta"), Bn("enc.bn4"),
                          mode, mom, eps), slope);
  Latent latent;
  latent.mu = Dense(h, P("enc.mu.weight"), P("enc.mu.bias"));
  latent.logvar = Dense(h, P("enc.logvar.weight"), P("enc.logvar.bias"));
  return latent;
}

Value Model::Decode(const Value &z, BnMode mode) {
  const Shape &s = z.shape();
  const ArchConfig &a = config_.arch;
  if (s.NumAxes() != 2 || s.Dim(1) != a.embed_dim) {
    throw DimensionError("decode: expected [B, " + std::to_string(a.embed_dim) +
                         "], got " + s.ToString());
  }
  const int64_t batch = s.Dim(0);
  const int64_t ch0 = a.conv_channels[0], ch1 = a.conv_channels[1],
                ch2 = a.conv_channels[2];
  const double slope = a.leaky_slope;
  const double mom = a.bn_momentum, eps = a.bn_epsilon;

  Value h = Dense(z, P("dec.fc1.weight"), P("dec.fc1.bias"));
  h = LeakyRelu(BatchNorm(h, P("dec.bn1.gamma"), P("dec.bn1.beta"), Bn("dec.bn1"),
                          mode, mom, eps), slope);
  h = Dense(h, P("dec.fc2.weight"), P("dec.fc2.bias"));
  h = Reshape(h, Shape{batch, dec_lens_.t3, 1, ch2});
  h = LeakyRelu(BatchNorm(h, P("dec.bn2.gamma"), P("dec.bn2.beta"), Bn("dec.bn2"),
                          mode, mom, eps), slope);
  h = Conv2dTranspose(h, P("dec.deconv1.kernel"), 2, 1, PadMode::kSame,
                      dec_lens_.t2, 1);
  h = LeakyRelu(BatchNorm(h, P("dec.bn3.gamma"), P("dec.bn3.beta"), Bn("dec.bn3"),
                          mode, mom, eps), slope);
  h = Conv2dTranspose(h, P("dec.deconv2.kernel"), 2, 1, PadMode::kSame,
                      dec_lens_.t1, 1);
  h = LeakyRelu(BatchNorm(h, P("dec.bn4.gamma"), P("dec.bn4.beta"), Bn("dec.bn4"),
                          mode, mom, eps), slope);
  // Final layer is linear: log-Mel space has no natural squashing.
  h = Conv2dTranspose(h, P("dec.deconv3.kernel"), 1, 1, PadMode::kValid,
                      config_.output_rows, config_.feat_dim);
  h = ChannelBias(h, P("dec.deconv3.bias"));
  return h;
}

Model::Side Model::EncoderSide(ModelKind kind) {
  return kind == ModelKind::kCjfs ? Side::kNeighbourY : Side::kTargetX;
}

Model::Side Model::TargetSide(ModelKind kind) {
  return kind == ModelKind::kCjfa ? Side::kNeighbourY : Side::kTargetX;
}

Value Model::BatchInput(std::span<const WindowSample *const> batch,
                        Side side) const {
  if (batch.empty()) throw ContractError("model: empty batch");
  const int64_t rows =
      side == Side::kTargetX ? batch[0]->x.rows : batch[0]->y.rows;
  const int64_t fd = config_.feat_dim;
  const int64_t b = static_cast<int64_t>(batch.size());
  std::vector<double> data(b * rows * fd);
  for (int64_t i = 0; i < b; ++i) {
    const Matrix &m = side == Side::kTargetX ? batch[i]->x : batch[i]->y;
    if (m.rows != rows || m.cols != fd) {
      throw DimensionError("model: inconsistent window shapes in batch");
    }
    std::copy(m.data.begin(), m.data.end(), data.begin() + i * rows * fd);
  }
  return Value::Leaf(Shape{b, rows, fd, 1}, std::move(data));
}

double Model::EffectiveKlWeight() const {
  if (config_.arch.kl_weight > 0.0) return config_.arch.kl_weight;
  return 2.0 / static_cast<double>(config_.output_rows * config_.feat_dim);
}

Model::LossParts Model::Loss(std::span<const WindowSample *const> batch,
                             std::span<const double> noise, BnMode mode) {
  Value enc_in = BatchInput(batch, EncoderSide(config_.kind));
  Value target_v = BatchInput(batch, TargetSide(config_.kind));
  if (target_v.shape().Dim(1) != config_.output_rows) {
    throw DimensionError("model: target rows " +
                         std::to_string(target_v.shape().Dim(1)) +
                         " != decoder output rows " +
                         std::to_string(config_.output_rows));
  }
  Latent latent = Encode(enc_in, mode);
  Value z = Reparameterize(latent.mu, latent.logvar, noise);
  Value out = Decode(z, mode);
  LossParts parts;
  parts.recon = Mse(out, target_v.Data());
  parts.kl = GaussianKl(latent.mu, latent.logvar);
  parts.total = Add(parts.recon, Scale(parts.kl, EffectiveKlWeight()));
  return parts;
}

Matrix Model::EmbedWindows(std::span<const WindowSample *const> samples) {
  if (!has_trained_params_) {
    throw ContractError("embed: model has no trained parameters (train or "
                        "load a checkpoint first)");
  }
  const int64_t k = config_.arch.embed_dim;
  Matrix out(static_cast<int64_t>(samples.size()), k);
  const Side side = EncoderSide(config_.kind);
  for (size_t at = 0; at < samples.size(); at += kEmbedChunk) {
    const size_t n = std::min<size_t>(kEmbedChunk, samples.size() - at);
    Value input = BatchInput(samples.subspan(at, n), side);
    Latent latent = Encode(input, BnMode::kInfer);
    std::span<const double> mu = latent.mu.Data();
    std::copy(mu.begin(), mu.end(), out.data.begin() + at * k);
  }
  return out;
}

Matrix Model::EmbedWindows(const std::vector<WindowSample> &samples) {
  std::vector<const WindowSample *> ptrs;
  ptrs.reserve(samples.size());
  for (const auto &s : samples) ptrs.push_back(&s);
  return EmbedWindows(std::span<const WindowSample *const>(ptrs));
}

}  // namespace cjfe
