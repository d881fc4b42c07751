// trainer/adam.cc

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

#include "trainer/adam.h"

#include <cmath>

#include "util/common.h"

namespace cjfe {

void OptimConfig::Validate() const {
  if (!(lr > 0.0)) throw ContractError("optim: lr must be > 0");
  if (!(beta1 > 0.0 && beta1 < 1.0 && beta2 > 0.0 && beta2 < 1.0)) {
    throw ContractError("optim: betas must be in (0, 1)");
  }
  if (!(epsilon > 0.0)) throw ContractError("optim: epsilon must be > 0");
  if (batch_size < 1) throw ContractError("optim: batch_size must be >= 1");
  if (max_steps < 0) throw ContractError("optim: max_steps must be >= 0");
  if (grad_clip < 0.0) throw ContractError("optim: grad_clip must be >= 0");
}

AdamState::AdamState(const ParamSet &params) {
  for (const auto &[name, v] : params) {
    Moments &mom = moments_[name];
    mom.m.assign(v.NumElements(), 0.0);
    mom.v.assign(v.NumElements(), 0.0);
  }
}

void AdamState::Step(ParamSet &params, const OptimConfig &cfg, int64_t step) {
  cfg.Validate();
  if (step < 1) throw ContractError("adam: step must be >= 1");

  double clip_scale = 1.0;
  if (cfg.grad_clip > 0.0) {
    double sq = 0.0;
    for (const auto &[name, v] : params) {
      for (double g : v.Grad()) sq += g * g;
    }
    double norm = std::sqrt(sq);
    if (norm > cfg.grad_clip) clip_scale = cfg.grad_clip / norm;
  }

  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
  for (auto &[name, v] : params) {
    auto it = moments_.find(name);
    if (it == moments_.end()) {
      throw ContractError("adam: parameter '" + name + "' has no moment state");
    }
    Moments &mom = it->second;
    std::span<double> x = v.MutableData();
    std::span<const double> grad = v.Grad();
    for (size_t i = 0; i < x.size(); ++i) {
      double g = grad[i] * clip_scale;
      if (!std::isfinite(g)) {
        throw NumericError("adam: non-finite gradient in parameter '" + name +
                           "' at element " + std::to_string(i));
      }
      mom.m[i] = cfg.beta1 * mom.m[i] + (1.0 - cfg.beta1) * g;
      mom.v[i] = cfg.beta2 * mom.v[i] + (1.0 - cfg.beta2) * g * g;
      const double m_hat = mom.m[i] / bc1;
      const double v_hat = mom.v[i] / bc2;
      x[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
  }
}

}  // namespace cjfe
