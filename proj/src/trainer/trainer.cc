// trainer/trainer.cc

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

#include "trainer/trainer.h"

#include <chrono>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "util/common.h"
#include "util/rng.h"

namespace cjfe {

TrainReport Train(Model *model, const std::vector<WindowSample> &samples,
                  const OptimConfig &cfg, std::ostream *metrics_jsonl) {
  using Clock = std::chrono::steady_clock;
  cfg.Validate();
  if (samples.empty()) {
    throw DataError("train: corpus is empty after windowing");
  }
  const int64_t n = static_cast<int64_t>(samples.size());
  const int64_t batch = std::min<int64_t>(cfg.batch_size, n);
  const int64_t k = model->config().arch.embed_dim;

  AdamState adam(model->params());
  Rng rng = Rng::Derive(cfg.seed, 0x7e41);
  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<const WindowSample *> batch_ptrs(batch);
  std::vector<double> noise(batch * k);

  TrainReport report;
  report.steps.reserve(cfg.max_steps);
  const auto run_start = Clock::now();
  int64_t pos = n;  // forces a shuffle before the first batch
  model->params().ZeroGrads();
  for (int64_t step = 1; step <= cfg.max_steps; ++step) {
    if (pos + batch > n) {
      rng.Shuffle(&order);
      pos = 0;
    }
    for (int64_t i = 0; i < batch; ++i) {
      batch_ptrs[i] = &samples[order[pos + i]];
    }
    pos += batch;
    rng.FillNormal(&noise);

    const auto step_start = Clock::now();
    Model::LossParts parts = model->Loss(
        std::span<const WindowSample *const>(batch_ptrs), noise, BnMode::kTrain);
    TrainStepRecord rec;
    rec.step = step;
    rec.loss = parts.total.Scalar();
    rec.recon = parts.recon.Scalar();
    rec.kl = parts.kl.Scalar();
    if (!std::isfinite(rec.loss)) {
      throw NumericError("train: non-finite loss at step " +
                         std::to_string(step) + " (recon " +
                         std::to_string(rec.recon) + ", kl " +
                         std::to_string(rec.kl) + ")");
    }
    Backward(parts.total);
    adam.Step(model->params(), cfg, step);
    model->params().ZeroGrads();
    rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() -
                                                            step_start)
                      .count();
    if (metrics_jsonl) {
      nlohmann::json line = {{"step", rec.step},
                             {"loss", rec.loss},
                             {"recon", rec.recon},
                             {"kl", rec.kl},
                             {"wall_ms", rec.wall_ms}};
      (*metrics_jsonl) << line.dump() << "\n";
    }
    report.steps.push_back(rec);
  }
  report.wall_ms_total =
      std::chrono::duration<double, std::milli>(Clock::now() - run_start).count();
  model->MarkTrained();
  return report;
}

}  // namespace cjfe
