// workbench/pipeline.cc

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

#include "workbench/pipeline.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "frontend/wav.h"
#include "probe/splits.h"
#include "util/logging.h"

namespace cjfe {

LoadedCorpus LoadCorpus(const std::string &manifest_path,
                        const std::string &features_path, const DspConfig &dsp) {
  LoadedCorpus loaded;
  loaded.corpus.index = LoadManifest(manifest_path);
  if (!features_path.empty()) {
    loaded.corpus.features = LoadFeatureCache(features_path);
    std::vector<std::string> missing;
    for (const auto &utt : loaded.corpus.index.utterances) {
      if (!loaded.corpus.features.count(utt.id)) missing.push_back(utt.id);
    }
    if (!missing.empty()) {
      std::string msg = "feature cache is missing utterances: ";
      for (size_t i = 0; i < missing.size() && i < 10; ++i) {
        if (i) msg += ", ";
        msg += missing[i];
      }
      throw DataError(msg);
    }
  } else {
    for (const auto &utt : loaded.corpus.index.utterances) {
      if (utt.audio_path.empty()) {
        throw DataError("utterance '" + utt.id +
                        "' has no audio_path and no feature cache was given");
      }
      AudioBuffer audio = LoadWav(utt.audio_path);
      loaded.corpus.features.emplace(utt.id, LogMel(audio, dsp, utt.id));
    }
  }
  if (dsp.standardize) {
    loaded.norm = ComputeNormStats(loaded.corpus);
    ApplyNormStats(&loaded.corpus, loaded.norm);
  }
  return loaded;
}

Corpus CorpusFromSynth(SynthCorpus &&synth) {
  Corpus corpus;
  corpus.index = std::move(synth.index);
  corpus.features = std::move(synth.features);
  return corpus;
}

NormStats ComputeNormStats(const Corpus &corpus) {
  NormStats norm;
  norm.enabled = true;
  int64_t dim = 0;
  int64_t count = 0;
  for (const auto &[id, feat] : corpus.features) {
    dim = feat.frames.cols;
    count += feat.frames.rows;
  }
  if (count == 0) throw DataError("standardize: corpus has no frames");
  norm.mean.assign(dim, 0.0);
  norm.stddev.assign(dim, 0.0);
  for (const auto &[id, feat] : corpus.features) {
    for (int64_t t = 0; t < feat.frames.rows; ++t) {
      for (int64_t m = 0; m < dim; ++m) norm.mean[m] += feat.frames.At(t, m);
    }
  }
  for (int64_t m = 0; m < dim; ++m) norm.mean[m] /= count;
  for (const auto &[id, feat] : corpus.features) {
    for (int64_t t = 0; t < feat.frames.rows; ++t) {
      for (int64_t m = 0; m < dim; ++m) {
        const double d = feat.frames.At(t, m) - norm.mean[m];
        norm.stddev[m] += d * d;
      }
    }
  }
  for (int64_t m = 0; m < dim; ++m) {
    norm.stddev[m] = std::sqrt(norm.stddev[m] / count);
    if (norm.stddev[m] < 1e-8) norm.stddev[m] = 1.0;  // constant dimension
  }
  return norm;
}

void ApplyNormStats(Corpus *corpus, const NormStats &norm) {
  if (!norm.enabled) return;
  for (auto &[id, feat] : corpus->features) {
    if (static_cast<size_t>(feat.frames.cols) != norm.mean.size()) {
      throw DimensionError("standardize: stats dim != feature dim");
    }
    for (int64_t t = 0; t < feat.frames.rows; ++t) {
      for (int64_t m = 0; m < feat.frames.cols; ++m) {
        feat.frames.At(t, m) =
            (feat.frames.At(t, m) - norm.mean[m]) / norm.stddev[m];
      }
    }
  }
}

std::vector<WindowSample> TrainingWindows(const Corpus &corpus,
                                          const WindowConfig &cfg,
                                          const std::vector<std::string> &utt_ids) {
  std::vector<std::string> ids =
      utt_ids.empty() ? corpus.index.UtteranceIds() : utt_ids;
  std::sort(ids.begin(), ids.end());
  std::vector<WindowSample> samples;
  for (const auto &id : ids) {
    const FeatureMatrix &feat = corpus.Features(id);
    std::vector<WindowSample> w = ExtractWindows(feat, cfg);
    if (w.empty()) {
      LogInfo("windowing: skipped utterance '" + id + "' (" +
              std::to_string(feat.NumFrames()) + " frames < " +
              std::to_string(cfg.TotalSpan()) + ")");
      continue;
    }
    std::move(w.begin(), w.end(), std::back_inserter(samples));
  }
  return samples;
}

TrainedEncoder TrainEncoder(ModelKind kind, const Corpus &corpus,
                            const RunConfig &cfg,
                            const std::vector<std::string> &utt_ids,
                            std::ostream *metrics_jsonl) {
  ModelConfig model_cfg = MakeModelConfig(kind, cfg.window.target_len,
                                          cfg.window.neighbour_len, cfg.arch);
  TrainedEncoder trained{Model(model_cfg), TrainReport{}};
  trained.model.InitParams(cfg.seed);
  std::vector<WindowSample> samples =
      TrainingWindows(corpus, cfg.window, utt_ids);
  trained.report =
      Train(&trained.model, samples, cfg.MakeOptimConfig(), metrics_jsonl);
  return trained;
}

ProbeReport RunPhonePipeline(const Corpus &corpus, ModelKind kind,
                             const RunConfig &cfg, bool shuffle_labels,
                             Model *trained_out) {
  std::vector<std::string> train_ids;
  for (const auto &utt : corpus.index.utterances) {
    if (utt.subset == "train") train_ids.push_back(utt.id);
  }
  if (train_ids.empty()) throw DataError("phone pipeline: no train-subset utterances");
  TrainedEncoder trained = TrainEncoder(kind, corpus, cfg, train_ids, nullptr);
  ProbeRunConfig probe_cfg = cfg.MakeProbeRunConfig();
  probe_cfg.shuffle_labels = shuffle_labels;
  ProbeReport report = EvaluatePhone(corpus, &trained.model, probe_cfg);
  if (trained_out) *trained_out = std::move(trained.model);
  return report;
}

ProbeReport RunSpeakerPipeline(const Corpus &corpus, char task, ModelKind kind,
                               const RunConfig &cfg, bool shuffle_labels,
                               Model *trained_out) {
  SplitPlan plan = MakeSplits(corpus.index, cfg.seed);
  TaskSplit split = GetTask(plan, task);
  TrainedEncoder trained =
      TrainEncoder(kind, corpus, cfg, split.embed_train, nullptr);
  ProbeRunConfig probe_cfg = cfg.MakeProbeRunConfig();
  probe_cfg.shuffle_labels = shuffle_labels;
  ProbeReport report = EvaluateSpeaker(corpus, split, &trained.model, probe_cfg);
  if (trained_out) *trained_out = std::move(trained.model);
  return report;
}

void ExportEmbeddingsCsv(Model *model, const Corpus &corpus,
                         const WindowConfig &cfg, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write embeddings '" + path + "'");
  const int64_t k = model->config().arch.embed_dim;
  out << "utterance_id,t,label";
  for (int64_t i = 0; i < k; ++i) out << ",e" << i;
  out << "\n";
  out.precision(9);
  for (const auto &utt : corpus.index.utterances) {
    const FeatureMatrix &feat = corpus.Features(utt.id);
    std::vector<WindowSample> windows = ExtractWindows(feat, cfg);
    if (windows.empty()) continue;
    Matrix emb = model->EmbedWindows(windows);
    const auto segments =
        PhoneSegments(utt, corpus.ShiftSamples(feat), feat.NumFrames());
    for (size_t i = 0; i < windows.size(); ++i) {
      const int64_t t = windows[i].t;
      std::string label;
      for (const auto &seg : segments) {
        if (seg.start_frame <= t && t + cfg.target_len <= seg.end_frame) {
          label = seg.label;
          break;
        }
      }
      out << utt.id << "," << t << "," << label;
      for (int64_t j = 0; j < k; ++j) out << "," << emb.At(i, j);
      out << "\n";
    }
  }
}

std::vector<SweepRow> RunParameterSweep(const Corpus &corpus,
                                        const RunConfig &cfg, ModelKind kind,
                                        const std::string &param,
                                        const std::vector<double> &values,
                                        const std::string &task,
                                        const std::string &csv_path,
                                        const std::string &log_path) {
  if (param != "K" && param != "N") {
    throw ContractError("sweep: param must be 'K' or 'N', got '" + param + "'");
  }
  if (task != "phone" && task != "a" && task != "b" && task != "c") {
    throw ContractError("sweep: task must be phone|a|b|c, got '" + task + "'");
  }
  auto runner = [&](double value) -> ProbeReport {
    RunConfig local = cfg;
    if (param == "K") {
      local.arch.embed_dim = static_cast<int64_t>(value);
    } else {
      local.window.neighbour_len = static_cast<int64_t>(value);
    }
    local.Validate();
    if (task == "phone") return RunPhonePipeline(corpus, kind, local);
    return RunSpeakerPipeline(corpus, task[0], kind, local);
  };
  std::vector<SweepRow> rows = Sweep(param, values, task, runner);
  if (!csv_path.empty()) WriteSweepCsv(rows, csv_path);
  if (!log_path.empty()) {
    std::ofstream log(log_path);
    if (!log) throw IoError("cannot write sweep log '" + log_path + "'");
    for (const auto &r : rows) {
      nlohmann::json line = {{"param", r.param},
                             {"value", r.value},
                             {"task", r.task},
                             {"accuracy", r.accuracy},
                             {"wall_ms", r.wall_ms}};
      log << line.dump() << "\n";
    }
  }
  return rows;
}

}  // namespace cjfe
