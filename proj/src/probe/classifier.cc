// probe/classifier.cc

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

#include "probe/classifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gradcore/ops.h"
#include "util/common.h"
#include "util/rng.h"

namespace cjfe {

void ProbeClassifierConfig::Validate() const {
  if (input_dim < 1) throw ContractError("probe: input_dim must be >= 1");
  if (hidden_units < 1) throw ContractError("probe: hidden_units must be >= 1");
  if (n_classes < 2) throw ContractError("probe: need at least 2 classes");
  if (head != "mlp" && head != "tconv") {
    throw ContractError("probe: head must be 'mlp' or 'tconv', got '" + head + "'");
  }
  optim.Validate();
}

ProbeClassifier::ProbeClassifier(const ProbeClassifierConfig &cfg) : cfg_(cfg) {
  cfg_.Validate();
  params_.Create("probe.fc1.weight", Shape{cfg_.input_dim, cfg_.hidden_units});
  params_.Create("probe.fc1.bias", Shape{cfg_.hidden_units});
  params_.Create("probe.out.weight", Shape{cfg_.hidden_units, cfg_.n_classes});
  params_.Create("probe.out.bias", Shape{cfg_.n_classes});
}

Value ProbeClassifier::Logits(const Value &input) const {
  Value h = Dense(input, params_.Get("probe.fc1.weight"),
                  params_.Get("probe.fc1.bias"));
  h = LeakyRelu(h, cfg_.leaky_slope);
  return Dense(h, params_.Get("probe.out.weight"), params_.Get("probe.out.bias"));
}

void ProbeClassifier::Train(const Matrix &embeddings,
                            const std::vector<int64_t> &labels) {
  const int64_t n = embeddings.rows;
  if (n == 0) throw DataError("probe: no training examples");
  if (embeddings.cols != cfg_.input_dim) {
    throw DimensionError("probe: embedding dim " + std::to_string(embeddings.cols) +
                         " != configured input_dim " +
                         std::to_string(cfg_.input_dim));
  }
  if (static_cast<int64_t>(labels.size()) != n) {
    throw DimensionError("probe: labels length != example count");
  }
  std::vector<int64_t> counts(cfg_.n_classes, 0);
  for (int64_t lab : labels) {
    if (lab < 0 || lab >= cfg_.n_classes) {
      throw DataError("probe: label " + std::to_string(lab) + " out of range");
    }
    ++counts[lab];
  }
  for (int64_t c = 0; c < cfg_.n_classes; ++c) {
    if (counts[c] == 0) {
      throw DataError("probe: class " + std::to_string(c) +
                      " absent from training data");
    }
  }

  // He init for the hidden layer, zero output layer (uniform start).
  Rng init_rng = Rng::Derive(cfg_.optim.seed, 0xbead);
  {
    Value &w1 = params_.Get("probe.fc1.weight");
    const double std = std::sqrt(2.0 / cfg_.input_dim);
    for (double &x : w1.MutableData()) x = init_rng.Normal(0.0, std);
    for (const char *name : {"probe.fc1.bias", "probe.out.weight", "probe.out.bias"}) {
      Value &v = params_.Get(name);
      std::fill(v.MutableData().begin(), v.MutableData().end(), 0.0);
    }
  }

  const OptimConfig &opt = cfg_.optim;
  const int64_t batch = std::min<int64_t>(opt.batch_size, n);
  AdamState adam(params_);
  Rng rng = Rng::Derive(opt.seed, 0x9c0b);
  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> xbuf(batch * cfg_.input_dim);
  std::vector<int64_t> ybuf(batch);
  int64_t pos = n;
  params_.ZeroGrads();
  for (int64_t step = 1; step <= opt.max_steps; ++step) {
    if (pos + batch > n) {
      rng.Shuffle(&order);
      pos = 0;
    }
    for (int64_t i = 0; i < batch; ++i) {
      const int64_t src = order[pos + i];
      std::copy(embeddings.Row(src).begin(), embeddings.Row(src).end(),
                xbuf.begin() + i * cfg_.input_dim);
      ybuf[i] = labels[src];
    }
    pos += batch;
    Value input = Value::Leaf(Shape{batch, cfg_.input_dim}, xbuf);
    Value loss = SoftmaxCrossEntropy(Logits(input), ybuf);
    if (!std::isfinite(loss.Scalar())) {
      throw NumericError("probe: non-finite loss at step " + std::to_string(step));
    }
    Backward(loss);
    adam.Step(params_, opt, step);
    params_.ZeroGrads();
  }
  trained_ = true;
}

Matrix ProbeClassifier::LogPosteriors(const Matrix &embeddings) const {
  if (!trained_) throw ContractError("probe: classifier is not trained");
  if (embeddings.cols != cfg_.input_dim) {
    throw DimensionError("probe: embedding dim " + std::to_string(embeddings.cols) +
                         " != configured input_dim " +
                         std::to_string(cfg_.input_dim));
  }
  Matrix out(embeddings.rows, cfg_.n_classes);
  if (embeddings.rows == 0) return out;
  Value input = Value::Leaf(Shape{embeddings.rows, cfg_.input_dim}, embeddings.data);
  Value logits = Logits(input);
  LogSoftmaxRows(embeddings.rows, cfg_.n_classes, logits.Data().data(),
                 out.data.data());
  return out;
}

}  // namespace cjfe
