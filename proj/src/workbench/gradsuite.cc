// workbench/gradsuite.cc

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

#include "workbench/gradsuite.h"

#include <cmath>

#include "encoders/model.h"
#include "gradcore/ops.h"
#include "util/rng.h"

namespace cjfe {
namespace {

constexpr uint64_t kSuiteSeed = 2027;

std::vector<double> RandomVector(Rng *rng, int64_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double &x : v) x = rng->Uniform(lo, hi);
  return v;
}

// Magnitudes in [0.2, 1.2] with random signs: far from the ReLU kink, so a
// 1e-3 perturbation never flips the gate.
std::vector<double> KinkFreeVector(Rng *rng, int64_t n) {
  std::vector<double> v(n);
  for (double &x : v) {
    x = rng->Uniform(0.2, 1.2) * (rng->Uniform() < 0.5 ? -1.0 : 1.0);
  }
  return v;
}

GradSuiteResult CheckOp(const std::string &name, ParamSet &params,
                        const GraphBuilder &builder, double tolerance) {
  GradSuiteResult result;
  result.name = name;
  result.report = GradCheck(params, builder, tolerance);
  return result;
}

void AddConvChecks(std::vector<GradSuiteResult> *out, double tol) {
  {
    // conv2d, valid, stride 1.
    Rng rng = Rng::Derive(kSuiteSeed, 1);
    ParamSet ps;
    ps.Create("x", Shape{2, 5, 4, 2});
    ps.Create("w", Shape{3, 4, 2, 3});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -1.0, 1.0);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    auto target = RandomVector(&rng, 2 * 3 * 1 * 3, -1.0, 1.0);
    out->push_back(CheckOp("conv2d_valid", ps, [target](ParamSet &p) {
      return Mse(Conv2d(p.Get("x"), p.Get("w"), 1, 1, PadMode::kValid), target);
    }, tol));
  }
  {
    // conv2d, same, stride 2.
    Rng rng = Rng::Derive(kSuiteSeed, 2);
    ParamSet ps;
    ps.Create("x", Shape{2, 7, 1, 2});
    ps.Create("w", Shape{3, 1, 2, 4});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -1.0, 1.0);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    auto target = RandomVector(&rng, 2 * 4 * 1 * 4, -1.0, 1.0);
    out->push_back(CheckOp("conv2d_same_stride2", ps, [target](ParamSet &p) {
      return Mse(Conv2d(p.Get("x"), p.Get("w"), 2, 1, PadMode::kSame), target);
    }, tol));
  }
  {
    // conv2d_transpose, same, stride 2 (time upsampling).
    Rng rng = Rng::Derive(kSuiteSeed, 3);
    ParamSet ps;
    ps.Create("x", Shape{2, 3, 1, 4});
    ps.Create("w", Shape{3, 1, 2, 4});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -1.0, 1.0);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    auto target = RandomVector(&rng, 2 * 6 * 1 * 2, -1.0, 1.0);
    out->push_back(CheckOp("conv2d_transpose_same_stride2", ps,
                           [target](ParamSet &p) {
      return Mse(Conv2dTranspose(p.Get("x"), p.Get("w"), 2, 1, PadMode::kSame,
                                 6, 1), target);
    }, tol));
  }
  {
    // conv2d_transpose, valid (frequency re-expansion as in the decoder).
    Rng rng = Rng::Derive(kSuiteSeed, 4);
    ParamSet ps;
    ps.Create("x", Shape{1, 4, 1, 2});
    ps.Create("w", Shape{1, 5, 1, 2});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -1.0, 1.0);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    auto target = RandomVector(&rng, 1 * 4 * 5 * 1, -1.0, 1.0);
    out->push_back(CheckOp("conv2d_transpose_valid", ps, [target](ParamSet &p) {
      return Mse(Conv2dTranspose(p.Get("x"), p.Get("w"), 1, 1, PadMode::kValid,
                                 4, 5), target);
    }, tol));
  }
}

void AddElementwiseChecks(std::vector<GradSuiteResult> *out, double tol) {
  {
    Rng rng = Rng::Derive(kSuiteSeed, 5);
    ParamSet ps;
    ps.Create("x", Shape{2, 3});
    ps.Create("w", Shape{3, 4});
    ps.Create("b", Shape{4});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -1.0, 1.0);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    auto target = RandomVector(&rng, 8, -1.0, 1.0);
    out->push_back(CheckOp("dense", ps, [target](ParamSet &p) {
      return Mse(Dense(p.Get("x"), p.Get("w"), p.Get("b")), target);
    }, tol));
  }
  {
    Rng rng = Rng::Derive(kSuiteSeed, 6);
    ParamSet ps;
    ps.Create("x", Shape{1, 2, 3, 2});
    ps.Create("b", Shape{2});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -1.0, 1.0);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    auto target = RandomVector(&rng, 12, -1.0, 1.0);
    out->push_back(CheckOp("channel_bias", ps, [target](ParamSet &p) {
      return Mse(ChannelBias(p.Get("x"), p.Get("b")), target);
    }, tol));
  }
  {
    Rng rng = Rng::Derive(kSuiteSeed, 7);
    ParamSet ps;
    Value &x = ps.Create("x", Shape{3, 4});
    auto d = KinkFreeVector(&rng, 12);
    std::copy(d.begin(), d.end(), x.MutableData().begin());
    auto target = RandomVector(&rng, 12, -1.0, 1.0);
    out->push_back(CheckOp("leaky_relu", ps, [target](ParamSet &p) {
      return Mse(LeakyRelu(p.Get("x"), 0.01), target);
    }, tol));
  }
  {
    Rng rng = Rng::Derive(kSuiteSeed, 8);
    ParamSet ps;
    Value &x = ps.Create("x", Shape{2, 3});
    auto d = RandomVector(&rng, 6, -1.0, 1.0);
    std::copy(d.begin(), d.end(), x.MutableData().begin());
    auto target = RandomVector(&rng, 6, -1.0, 1.0);
    out->push_back(CheckOp("mse", ps, [target](ParamSet &p) {
      return Mse(p.Get("x"), target);
    }, tol));
  }
  {
    Rng rng = Rng::Derive(kSuiteSeed, 9);
    ParamSet ps;
    ps.Create("mu", Shape{3, 4});
    ps.Create("logvar", Shape{3, 4});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -1.2, 1.2);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    out->push_back(CheckOp("gaussian_kl", ps, [](ParamSet &p) {
      return GaussianKl(p.Get("mu"), p.Get("logvar"));
    }, tol));
  }
  {
    Rng rng = Rng::Derive(kSuiteSeed, 10);
    ParamSet ps;
    ps.Create("mu", Shape{2, 4});
    ps.Create("logvar", Shape{2, 4});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -0.8, 0.8);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    auto noise = RandomVector(&rng, 8, -1.5, 1.5);
    auto target = RandomVector(&rng, 8, -1.0, 1.0);
    out->push_back(CheckOp("reparameterize", ps, [noise, target](ParamSet &p) {
      return Mse(Reparameterize(p.Get("mu"), p.Get("logvar"), noise), target);
    }, tol));
  }
  {
    Rng rng = Rng::Derive(kSuiteSeed, 11);
    ParamSet ps;
    Value &x = ps.Create("logits", Shape{3, 4});
    auto d = RandomVector(&rng, 12, -1.0, 1.0);
    std::copy(d.begin(), d.end(), x.MutableData().begin());
    std::vector<int64_t> labels = {0, 2, 1};
    out->push_back(CheckOp("softmax_cross_entropy", ps, [labels](ParamSet &p) {
      return SoftmaxCrossEntropy(p.Get("logits"), labels);
    }, tol));
  }
  {
    Rng rng = Rng::Derive(kSuiteSeed, 12);
    ParamSet ps;
    ps.Create("a", Shape{2, 3});
    ps.Create("b", Shape{2, 3});
    for (auto &[n, v] : ps) {
      auto d = RandomVector(&rng, v.NumElements(), -1.0, 1.0);
      std::copy(d.begin(), d.end(), v.MutableData().begin());
    }
    out->push_back(CheckOp("add_scale_reshape_sum", ps, [](ParamSet &p) {
      Value h = Add(p.Get("a"), p.Get("b"));
      h = Scale(h, 1.7);
      h = Reshape(h, Shape{6});
      return Sum(h);
    }, tol));
  }
}

void AddBatchNormChecks(std::vector<GradSuiteResult> *out, double tol) {
  {
    Rng rng = Rng::Derive(kSuiteSeed, 13);
    ParamSet ps;
    ps.Create("x", Shape{2, 3, 1, 2});
    ps.Create("gamma", Shape{2});
    ps.Create("beta", Shape{2});
    {
      auto d = RandomVector(&rng, 12, -1.0, 1.0);
      std::copy(d.begin(), d.end(), ps.Get("x").MutableData().begin());
      auto g = RandomVector(&rng, 2, 0.5, 1.5);
      std::copy(g.begin(), g.end(), ps.Get("gamma").MutableData().begin());
      auto b = RandomVector(&rng, 2, -0.5, 0.5);
      std::copy(b.begin(), b.end(), ps.Get("beta").MutableData().begin());
    }
    auto state = std::make_shared<BnState>();
    state->running_mean = std::make_shared<std::vector<double>>(2, 0.0);
    state->running_var = std::make_shared<std::vector<double>>(2, 1.0);
    state->batches_tracked = std::make_shared<std::vector<double>>(1, 0.0);
    auto target = RandomVector(&rng, 12, -1.0, 1.0);
    out->push_back(CheckOp("batch_norm_train", ps, [state, target](ParamSet &p) {
      return Mse(BatchNorm(p.Get("x"), p.Get("gamma"), p.Get("beta"), *state,
                           BnMode::kTrain, 0.99, 1e-5), target);
    }, tol));
  }
  {
    Rng rng = Rng::Derive(kSuiteSeed, 14);
    ParamSet ps;
    ps.Create("x", Shape{2, 3, 1, 2});
    ps.Create("gamma", Shape{2});
    ps.Create("beta", Shape{2});
    {
      auto d = RandomVector(&rng, 12, -1.0, 1.0);
      std::copy(d.begin(), d.end(), ps.Get("x").MutableData().begin());
      auto g = RandomVector(&rng, 2, 0.5, 1.5);
      std::copy(g.begin(), g.end(), ps.Get("gamma").MutableData().begin());
      auto b = RandomVector(&rng, 2, -0.5, 0.5);
      std::copy(b.begin(), b.end(), ps.Get("beta").MutableData().begin());
    }
    auto state = std::make_shared<BnState>();
    state->running_mean =
        std::make_shared<std::vector<double>>(RandomVector(&rng, 2, -0.4, 0.4));
    state->running_var =
        std::make_shared<std::vector<double>>(RandomVector(&rng, 2, 0.6, 1.4));
    state->batches_tracked = std::make_shared<std::vector<double>>(1, 1.0);
    auto target = RandomVector(&rng, 12, -1.0, 1.0);
    out->push_back(CheckOp("batch_norm_infer", ps, [state, target](ParamSet &p) {
      return Mse(BatchNorm(p.Get("x"), p.Get("gamma"), p.Get("beta"), *state,
                           BnMode::kInfer, 0.99, 1e-5), target);
    }, tol));
  }
}

// Shared tiny fixture for the three full loss graphs: C=6, N=3, K=4,
// channels [2,3,4], fc 8, batch 2.
void AddFullModelCheck(std::vector<GradSuiteResult> *out, ModelKind kind,
                       double tol) {
  ArchConfig arch;
  arch.embed_dim = 4;
  arch.conv_channels = {2, 3, 4};
  arch.fc_units = 8;
  ModelConfig cfg = MakeModelConfig(kind, 6, 3, arch);

  auto model = std::make_shared<Model>(cfg);
  model->InitParams(kSuiteSeed);
  // Random offsets so every path (including the zero-initialized latent
  // heads) carries nonzero gradients.
  Rng rng = Rng::Derive(kSuiteSeed, 20 + static_cast<uint64_t>(kind));
  for (auto &[name, v] : model->params()) {
    for (double &x : v.MutableData()) x += rng.Normal(0.0, 0.05);
  }

  auto samples = std::make_shared<std::vector<WindowSample>>();
  for (int i = 0; i < 2; ++i) {
    WindowSample s;
    s.utterance_id = "fixture";
    s.t = i;
    s.x = Matrix(6, 80);
    s.y = Matrix(6, 80);
    for (double &v : s.x.data) v = rng.Normal(0.0, 0.8);
    for (double &v : s.y.data) v = rng.Normal(0.0, 0.8);
    samples->push_back(std::move(s));
  }
  auto noise = std::make_shared<std::vector<double>>(2 * arch.embed_dim);
  for (double &v : *noise) v = rng.Normal();

  GraphBuilder builder = [model, samples, noise](ParamSet &) {
    std::vector<const WindowSample *> batch{&(*samples)[0], &(*samples)[1]};
    return model->Loss(std::span<const WindowSample *const>(batch), *noise,
                       BnMode::kTrain).total;
  };
  out->push_back(CheckOp("full_loss_" + ToString(kind), model->params(),
                         builder, tol));
}

}  // namespace

std::vector<GradSuiteResult> RunStandardGradSuite(double tolerance) {
  std::vector<GradSuiteResult> results;
  AddConvChecks(&results, tolerance);
  AddElementwiseChecks(&results, tolerance);
  AddBatchNormChecks(&results, tolerance);
  AddFullModelCheck(&results, ModelKind::kVae, tolerance);
  AddFullModelCheck(&results, ModelKind::kCjfs, tolerance);
  AddFullModelCheck(&results, ModelKind::kCjfa, tolerance);
  return results;
}

bool AllPassed(const std::vector<GradSuiteResult> &results) {
  for (const auto &r : results) {
    if (!r.report.passed) return false;
  }
  return true;
}

}  // namespace cjfe
