// trainer/adam.h

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

#ifndef CJFE_TRAINER_ADAM_H_
#define CJFE_TRAINER_ADAM_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gradcore/paramset.h"

namespace cjfe {

struct OptimConfig {
  double lr = 1e-3;
  double beta1 = 0.95;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int64_t batch_size = 256;
  int64_t max_steps = 200;
  uint64_t seed = 17;
  double grad_clip = 0.0;  // global-norm clip; 0 disables

  void Validate() const;
};

// Bias-corrected Adam with per-element moment buffers.
class AdamState {
 public:
  explicit AdamState(const ParamSet &params);

  // Applies one update from the gradients currently stored on the params.
  // step is 1-based. Non-finite gradients abort with the parameter's name.
  void Step(ParamSet &params, const OptimConfig &cfg, int64_t step);

 private:
  struct Moments {
    std::vector<double> m, v;
  };
  std::map<std::string, Moments> moments_;
};

}  // namespace cjfe

#endif  // CJFE_TRAINER_ADAM_H_
