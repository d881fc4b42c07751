// workbench/runconfig.h

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

#ifndef CJFE_WORKBENCH_RUNCONFIG_H_
#define CJFE_WORKBENCH_RUNCONFIG_H_

#include <string>

#include <json.hpp>

#include "encoders/arch.h"
#include "frontend/melbank.h"
#include "probe/evaluate.h"
#include "segmenter/windowing.h"
#include "synthcorpus/synth.h"
#include "trainer/adam.h"

namespace cjfe {

// Unified run configuration. One seed drives every random stream (init,
// shuffling, noise, splits, synthesis). Unknown JSON keys are rejected.
struct RunConfig {
  uint64_t seed = 17;
  DspConfig dsp;
  WindowConfig window;
  ArchConfig arch;
  OptimConfig optim;  // encoder training
  struct ProbeSection {
    int64_t hidden_units = 512;
    std::string head = "mlp";
    int64_t steps = 300;
    int64_t batch_size = 256;
    double lr = 1e-3;
  } probe;
  SynthSpec synth;

  static RunConfig FromJson(const nlohmann::json &j);
  static RunConfig FromJsonFile(const std::string &path);
  nlohmann::json ToJson() const;
  void Validate() const;

  // "fnv1a64:<hex>" over the resolved JSON document.
  std::string Digest() const;

  // Probe classifier run derived from this config (window geometry, head,
  // training budget, shared seed).
  ProbeRunConfig MakeProbeRunConfig() const;

  // Encoder training config with the shared seed applied.
  OptimConfig MakeOptimConfig() const;
  SynthSpec MakeSynthSpec() const;
};

nlohmann::json ArchToJson(const ArchConfig &arch);
ArchConfig ArchFromJson(const nlohmann::json &j);

}  // namespace cjfe

#endif  // CJFE_WORKBENCH_RUNCONFIG_H_
