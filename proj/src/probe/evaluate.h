// probe/evaluate.h

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

#ifndef CJFE_PROBE_EVALUATE_H_
#define CJFE_PROBE_EVALUATE_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "encoders/model.h"
#include "probe/classifier.h"
#include "probe/splits.h"
#include "segmenter/corpus.h"

namespace cjfe {

// Segment decision under frame independence: argmax over classes of the
// summed per-frame log posteriors. Ties break to the lowest class index.
int64_t ClassifySegment(const std::vector<std::vector<double>> &frame_log_posteriors);
int64_t ClassifySegment(const Matrix &frame_log_posteriors);

struct ProbeReport {
  std::string task;  // "phone" or "speaker_a" / "speaker_b" / "speaker_c"
  double accuracy = 0.0;
  int64_t correct = 0;
  int64_t total = 0;
  std::vector<std::string> classes;
  // confusion[true_label][predicted_label] = segment count
  std::map<std::string, std::map<std::string, int64_t>> confusion;
  std::string config_digest;
  double wall_ms = 0.0;

  nlohmann::json ToJson() const;
};

// Probe-side knobs shared by both evaluation tasks.
struct ProbeRunConfig {
  WindowConfig window;
  int64_t hidden_units = 512;
  std::string head = "mlp";  // "mlp" | "tconv"
  double leaky_slope = 0.01;
  OptimConfig optim;         // probe classifier training
  bool shuffle_labels = false;  // control runs: permute training labels
  std::string config_digest;
};

// Segment-level phone classification. Embedding and classifier training data
// is the official train subset; evaluation runs on the official test subset.
// Phone boundaries come from the manifest.
ProbeReport EvaluatePhone(const Corpus &corpus, Model *model,
                          const ProbeRunConfig &cfg);

// Speaker recognition for one task split; a segment is a whole utterance.
ProbeReport EvaluateSpeaker(const Corpus &corpus, const TaskSplit &split,
                            Model *model, const ProbeRunConfig &cfg);

struct SweepRow {
  std::string param;  // "K" or "N"
  double value = 0.0;
  std::string task;
  double accuracy = 0.0;
  double wall_ms = 0.0;
};

// One full train+probe cycle per value, via the caller-provided runner.
std::vector<SweepRow> Sweep(const std::string &param,
                            const std::vector<double> &values,
                            const std::string &task,
                            const std::function<ProbeReport(double)> &runner);

// Header: param,value,task,accuracy
void WriteSweepCsv(const std::vector<SweepRow> &rows, const std::string &path);

}  // namespace cjfe

#endif  // CJFE_PROBE_EVALUATE_H_
