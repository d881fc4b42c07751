// workbench/pipeline.h

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

#ifndef CJFE_WORKBENCH_PIPELINE_H_
#define CJFE_WORKBENCH_PIPELINE_H_

#include <ostream>
#include <string>
#include <vector>

#include "probe/evaluate.h"
#include "synthcorpus/synth.h"
#include "trainer/trainer.h"
#include "workbench/container.h"
#include "workbench/runconfig.h"

namespace cjfe {

// Loads manifest + features. If features_path is empty, every utterance must
// name an audio file and the DSP frontend runs; otherwise features come from
// the cache. With dsp.standardize set, per-corpus standardization is applied
// and recorded in corpus norm stats.
struct LoadedCorpus {
  Corpus corpus;
  NormStats norm;
};

LoadedCorpus LoadCorpus(const std::string &manifest_path,
                        const std::string &features_path, const DspConfig &dsp);

Corpus CorpusFromSynth(SynthCorpus &&synth);

NormStats ComputeNormStats(const Corpus &corpus);
void ApplyNormStats(Corpus *corpus, const NormStats &norm);

// Training windows from the listed utterances (empty list = whole corpus),
// sorted by (utterance_id, t). Too-short utterances are skipped with a log
// line.
std::vector<WindowSample> TrainingWindows(const Corpus &corpus,
                                          const WindowConfig &cfg,
                                          const std::vector<std::string> &utt_ids);

struct TrainedEncoder {
  Model model;
  TrainReport report;
};

// Builds, initializes and trains one encoder on the given utterances.
TrainedEncoder TrainEncoder(ModelKind kind, const Corpus &corpus,
                            const RunConfig &cfg,
                            const std::vector<std::string> &utt_ids,
                            std::ostream *metrics_jsonl);

// Full cycles used by the CLI, the sweeps and the acceptance suite.
ProbeReport RunPhonePipeline(const Corpus &corpus, ModelKind kind,
                             const RunConfig &cfg, bool shuffle_labels = false,
                             Model *trained_out = nullptr);
ProbeReport RunSpeakerPipeline(const Corpus &corpus, char task, ModelKind kind,
                               const RunConfig &cfg, bool shuffle_labels = false,
                               Model *trained_out = nullptr);

// Per-window embedding export: utterance_id, t, label (covering phone or
// empty), then K floats. Header always written.
void ExportEmbeddingsCsv(Model *model, const Corpus &corpus,
                         const WindowConfig &cfg, const std::string &path);

// One train+probe cycle per value of "K" (embed_dim) or "N" (neighbour_len);
// writes the CSV table and a JSON-lines log with wall times.
std::vector<SweepRow> RunParameterSweep(const Corpus &corpus,
                                        const RunConfig &cfg, ModelKind kind,
                                        const std::string &param,
                                        const std::vector<double> &values,
                                        const std::string &task,
                                        const std::string &csv_path,
                                        const std::string &log_path);

}  // namespace cjfe

#endif  // CJFE_WORKBENCH_PIPELINE_H_
