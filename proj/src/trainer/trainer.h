// trainer/trainer.h

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

#ifndef CJFE_TRAINER_TRAINER_H_
#define CJFE_TRAINER_TRAINER_H_

#include <ostream>
#include <vector>

#include "encoders/model.h"
#include "trainer/adam.h"

namespace cjfe {

struct TrainStepRecord {
  int64_t step = 0;  // 1-based
  double loss = 0.0;
  double recon = 0.0;
  double kl = 0.0;
  double wall_ms = 0.0;
};

struct TrainReport {
  std::vector<TrainStepRecord> steps;
  double wall_ms_total = 0.0;
};

// Mini-batch training over pre-extracted window samples. Each epoch the
// sample order is reshuffled with the seeded stream; reparameterization noise
// comes from the same stream, so (seed, config, corpus) fully determine the
// run. Metrics are emitted as JSON-lines {step, loss, recon, kl, wall_ms}.
TrainReport Train(Model *model, const std::vector<WindowSample> &samples,
                  const OptimConfig &cfg, std::ostream *metrics_jsonl);

}  // namespace cjfe

#endif  // CJFE_TRAINER_TRAINER_H_
