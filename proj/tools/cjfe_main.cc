// tools/cjfe_main.cc

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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "probe/splits.h"
#include "util/common.h"
#include "util/logging.h"
#include "workbench/gradsuite.h"
#include "workbench/pipeline.h"

namespace {

using namespace cjfe;
namespace fs = std::filesystem;

struct CommonOpts {
  std::string config_path;
  uint64_t seed = 0;
  bool seed_set = false;
  std::string model = "cjfa";
  int64_t target_len = 0;
  int64_t neighbour_len = 0;
  int64_t embed_dim = 0;
  int64_t steps = -1;
};

// --config file first, then explicit flags on top.
RunConfig ResolveConfig(const CommonOpts &opts) {
  RunConfig cfg = opts.config_path.empty()
                      ? RunConfig()
                      : RunConfig::FromJsonFile(opts.config_path);
  if (opts.seed_set) cfg.seed = opts.seed;
  if (opts.target_len > 0) cfg.window.target_len = opts.target_len;
  if (opts.neighbour_len > 0) cfg.window.neighbour_len = opts.neighbour_len;
  if (opts.embed_dim > 0) cfg.arch.embed_dim = opts.embed_dim;
  if (opts.steps >= 0) cfg.optim.max_steps = opts.steps;
  cfg.Validate();
  return cfg;
}

void AddCommonFlags(CLI::App *cmd, CommonOpts *opts, bool with_model = true) {
  cmd->add_option("--config", opts->config_path, "run config JSON");
  auto *seed = cmd->add_option("--seed", opts->seed, "master seed");
  seed->each([opts](const std::string &) { opts->seed_set = true; });
  if (with_model) {
    cmd->add_option("--model", opts->model, "vae|cjfs|cjfa")
        ->check(CLI::IsMember({"vae", "cjfs", "cjfa"}));
  }
  cmd->add_option("--target-len", opts->target_len, "target window frames (C)");
  cmd->add_option("--neighbour-len", opts->neighbour_len,
                  "single-sided neighbour frames (N)");
  cmd->add_option("--embed-dim", opts->embed_dim, "embedding dimension (K)");
  cmd->add_option("--steps", opts->steps, "training steps");
}

// Re-runnable record of the fully resolved configuration, written next to
// every command's outputs.
void WriteResolvedConfig(const RunConfig &cfg, const std::string &out_path,
                         bool out_is_dir) {
  fs::path p(out_path);
  fs::path snapshot = out_is_dir ? p / "resolved_config.json"
                                 : p.parent_path().empty()
                                       ? fs::path(p.string() + ".config.json")
                                       : p.parent_path() /
                                             (p.stem().string() + ".config.json");
  std::ofstream out(snapshot);
  if (!out) throw IoError("cannot write config snapshot '" + snapshot.string() + "'");
  out << cfg.ToJson().dump(2) << "\n";
}

Corpus LoadCorpusChecked(const std::string &manifest, const std::string &features,
                         const RunConfig &cfg, const NormStats *override_norm) {
  LoadedCorpus loaded = LoadCorpus(manifest, features, cfg.dsp);
  if (override_norm && override_norm->enabled) {
    if (cfg.dsp.standardize) {
      throw ContractError("corpus already standardized; checkpoint stats would "
                          "apply twice");
    }
    ApplyNormStats(&loaded.corpus, *override_norm);
  }
  return std::move(loaded.corpus);
}

// The checkpoint geometry must agree with the requested window/arch flags.
void CheckCheckpointConfig(const LoadedCheckpoint &loaded, const RunConfig &cfg) {
  const ModelConfig &mc = loaded.model.config();
  ModelConfig expect = MakeModelConfig(mc.kind, cfg.window.target_len,
                                       cfg.window.neighbour_len, cfg.arch);
  if (expect.input_rows != mc.input_rows ||
      expect.output_rows != mc.output_rows ||
      expect.arch.embed_dim != mc.arch.embed_dim) {
    throw ContractError(
        "checkpoint architecture (K=" + std::to_string(mc.arch.embed_dim) +
        ", rows " + std::to_string(mc.input_rows) + "/" +
        std::to_string(mc.output_rows) +
        ") does not match the requested configuration (K=" +
        std::to_string(expect.arch.embed_dim) + ", rows " +
        std::to_string(expect.input_rows) + "/" +
        std::to_string(expect.output_rows) + ")");
  }
}

int RunSynthData(const CommonOpts &common, const std::string &out_dir) {
  RunConfig cfg = ResolveConfig(common);
  fs::create_directories(out_dir);
  SynthCorpus synth = Generate(cfg.MakeSynthSpec());
  SaveManifest(synth.index, (fs::path(out_dir) / "manifest.jsonl").string());
  SaveFeatureCache((fs::path(out_dir) / "features.cjfe").string(), synth.features);
  WriteResolvedConfig(cfg, out_dir, true);
  LogInfo("synth-data: wrote " + std::to_string(synth.index.utterances.size()) +
          " utterances to " + out_dir);
  return 0;
}

int RunFeaturize(const CommonOpts &common, const std::string &manifest,
                 const std::string &out_path) {
  RunConfig cfg = ResolveConfig(common);
  CorpusIndex index = LoadManifest(manifest);
  std::map<std::string, FeatureMatrix> features;
  for (const auto &utt : index.utterances) {
    if (utt.audio_path.empty()) {
      throw DataError("featurize: utterance '" + utt.id + "' has no audio_path");
    }
    AudioBuffer audio = LoadWav(utt.audio_path);
    features.emplace(utt.id, LogMel(audio, cfg.dsp, utt.id));
  }
  SaveFeatureCache(out_path, features);
  WriteResolvedConfig(cfg, out_path, false);
  LogInfo("featurize: wrote features for " + std::to_string(features.size()) +
          " utterances to " + out_path);
  return 0;
}

int RunTrain(const CommonOpts &common, const std::string &manifest,
             const std::string &features, const std::string &out_dir,
             const std::string &subset, const std::string &split_task,
             const std::string &split_role) {
  RunConfig cfg = ResolveConfig(common);
  fs::create_directories(out_dir);
  LoadedCorpus loaded = LoadCorpus(manifest, features, cfg.dsp);

  std::vector<std::string> utt_ids;
  if (!split_task.empty()) {
    SplitPlan plan = MakeSplits(loaded.corpus.index, cfg.seed);
    TaskSplit task = GetTask(plan, split_task[0]);
    utt_ids = split_role == "clf" ? task.clf_train : task.embed_train;
  } else if (subset != "all") {
    for (const auto &utt : loaded.corpus.index.utterances) {
      if (utt.subset == subset) utt_ids.push_back(utt.id);
    }
    if (utt_ids.empty()) {
      throw DataError("train: no utterances in subset '" + subset + "'");
    }
  }

  std::ofstream metrics((fs::path(out_dir) / "metrics.jsonl").string());
  if (!metrics) throw IoError("cannot write metrics in '" + out_dir + "'");
  TrainedEncoder trained =
      TrainEncoder(ModelKindFromString(common.model), loaded.corpus, cfg,
                   utt_ids, &metrics);
  const std::string ckpt = (fs::path(out_dir) / "model.cjfe").string();
  SaveCheckpoint(ckpt, trained.model, cfg.Digest(), loaded.norm);
  WriteResolvedConfig(cfg, out_dir, true);
  LogInfo("train: " + std::to_string(trained.report.steps.size()) +
          " steps in " + std::to_string(trained.report.wall_ms_total / 1000.0) +
          " s; checkpoint " + ckpt);
  return 0;
}

int RunEmbed(const CommonOpts &common, const std::string &checkpoint,
             const std::string &manifest, const std::string &features,
             const std::string &out_path) {
  RunConfig cfg = ResolveConfig(common);
  LoadedCheckpoint loaded = LoadCheckpoint(checkpoint);
  CheckCheckpointConfig(loaded, cfg);
  Corpus corpus = LoadCorpusChecked(manifest, features, cfg, &loaded.norm);
  ExportEmbeddingsCsv(&loaded.model, corpus, cfg.window, out_path);
  WriteResolvedConfig(cfg, out_path, false);
  return 0;
}

int RunProbePhone(const CommonOpts &common, const std::string &checkpoint,
                  const std::string &manifest, const std::string &features,
                  const std::string &out_path, bool shuffle_labels) {
  RunConfig cfg = ResolveConfig(common);
  LoadedCheckpoint loaded = LoadCheckpoint(checkpoint);
  CheckCheckpointConfig(loaded, cfg);
  Corpus corpus = LoadCorpusChecked(manifest, features, cfg, &loaded.norm);
  ProbeRunConfig probe_cfg = cfg.MakeProbeRunConfig();
  probe_cfg.shuffle_labels = shuffle_labels;
  ProbeReport report = EvaluatePhone(corpus, &loaded.model, probe_cfg);
  std::cout << report.ToJson().dump() << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write report '" + out_path + "'");
    out << report.ToJson().dump(2) << "\n";
    WriteResolvedConfig(cfg, out_path, false);
  }
  return 0;
}

int RunProbeSpeaker(const CommonOpts &common, const std::string &task,
                    const std::string &checkpoint, const std::string &manifest,
                    const std::string &features, const std::string &out_path,
                    bool shuffle_labels) {
  RunConfig cfg = ResolveConfig(common);
  LoadedCheckpoint loaded = LoadCheckpoint(checkpoint);
  CheckCheckpointConfig(loaded, cfg);
  Corpus corpus = LoadCorpusChecked(manifest, features, cfg, &loaded.norm);
  SplitPlan plan = MakeSplits(corpus.index, cfg.seed);
  TaskSplit split = GetTask(plan, task[0]);
  ProbeRunConfig probe_cfg = cfg.MakeProbeRunConfig();
  probe_cfg.shuffle_labels = shuffle_labels;
  ProbeReport report = EvaluateSpeaker(corpus, split, &loaded.model, probe_cfg);
  std::cout << report.ToJson().dump() << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write report '" + out_path + "'");
    out << report.ToJson().dump(2) << "\n";
    WriteResolvedConfig(cfg, out_path, false);
  }
  return 0;
}

int RunSweepCmd(const CommonOpts &common, const std::string &manifest,
                const std::string &features, const std::string &param,
                const std::string &values_csv, const std::string &task,
                const std::string &out_path) {
  RunConfig cfg = ResolveConfig(common);
  Corpus corpus = LoadCorpusChecked(manifest, features, cfg, nullptr);
  std::vector<double> values;
  std::stringstream ss(values_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  const std::string log_path = out_path + ".log.jsonl";
  RunParameterSweep(corpus, cfg, ModelKindFromString(common.model), param,
                    values, task, out_path, log_path);
  WriteResolvedConfig(cfg, out_path, false);
  return 0;
}

int RunGradCheck(double tolerance) {
  std::vector<GradSuiteResult> results = RunStandardGradSuite(tolerance);
  for (const auto &r : results) {
    std::cout << (r.report.passed ? "ok   " : "FAIL ") << r.name
              << "  max_err=" << r.report.max_err << "\n";
  }
  const bool ok = AllPassed(results);
  std::cout << (ok ? "PASSED" : "FAILED") << " (" << results.size()
            << " fixtures, tolerance " << tolerance << ")\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"cjfe: contextual joint factor embeddings over a VAE backbone"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string manifest, features, out_path, checkpoint;
  std::string subset = "all", split_task, split_role = "embed";
  std::string task = "a", param = "K", values_csv = "50,150";
  std::string sweep_task = "phone";
  bool shuffle_labels = false;
  double tolerance = 1e-4;

  auto *synth = app.add_subcommand("synth-data", "generate a synthetic corpus");
  AddCommonFlags(synth, &common, false);
  synth->add_option("--out", out_path, "output directory")->required();

  auto *featurize = app.add_subcommand("featurize", "audio -> log-Mel cache");
  AddCommonFlags(featurize, &common, false);
  featurize->add_option("--manifest", manifest, "corpus manifest")->required();
  featurize->add_option("--out", out_path, "feature cache path")->required();

  auto *train = app.add_subcommand("train", "train one encoder model");
  AddCommonFlags(train, &common);
  train->add_option("--manifest", manifest)->required();
  train->add_option("--features", features, "feature cache (else DSP runs)");
  train->add_option("--out", out_path, "output directory")->required();
  train->add_option("--subset", subset, "all|train|test")
      ->check(CLI::IsMember({"all", "train", "test"}));
  train->add_option("--split-task", split_task, "a|b|c (speaker-task subset)")
      ->check(CLI::IsMember({"a", "b", "c"}));
  train->add_option("--split-role", split_role, "embed|clf")
      ->check(CLI::IsMember({"embed", "clf"}));

  auto *embed = app.add_subcommand("embed", "export per-window embeddings CSV");
  AddCommonFlags(embed, &common);
  embed->add_option("--checkpoint", checkpoint)->required();
  embed->add_option("--manifest", manifest)->required();
  embed->add_option("--features", features);
  embed->add_option("--out", out_path, "CSV path")->required();

  auto *probe_phone = app.add_subcommand("probe-phone", "phone classification");
  AddCommonFlags(probe_phone, &common);
  probe_phone->add_option("--checkpoint", checkpoint)->required();
  probe_phone->add_option("--manifest", manifest)->required();
  probe_phone->add_option("--features", features);
  probe_phone->add_option("--out", out_path, "report JSON path");
  probe_phone->add_flag("--shuffle-labels", shuffle_labels,
                        "no-leakage control run");

  auto *probe_speaker = app.add_subcommand("probe-speaker", "speaker recognition");
  AddCommonFlags(probe_speaker, &common);
  probe_speaker->add_option("--task", task, "a|b|c")
      ->check(CLI::IsMember({"a", "b", "c"}));
  probe_speaker->add_option("--checkpoint", checkpoint)->required();
  probe_speaker->add_option("--manifest", manifest)->required();
  probe_speaker->add_option("--features", features);
  probe_speaker->add_option("--out", out_path, "report JSON path");
  probe_speaker->add_flag("--shuffle-labels", shuffle_labels,
                          "no-leakage control run");

  auto *sweep = app.add_subcommand("sweep", "train+probe across K or N values");
  AddCommonFlags(sweep, &common);
  sweep->add_option("--manifest", manifest)->required();
  sweep->add_option("--features", features);
  sweep->add_option("--param", param, "K|N")->check(CLI::IsMember({"K", "N"}));
  sweep->add_option("--values", values_csv, "comma-separated values");
  sweep->add_option("--task", sweep_task, "phone|a|b|c")
      ->check(CLI::IsMember({"phone", "a", "b", "c"}));
  sweep->add_option("--out", out_path, "CSV path")->required();

  auto *gradcheck = app.add_subcommand("gradcheck", "finite-difference oracle");
  gradcheck->add_option("--tolerance", tolerance, "relative tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*synth) return RunSynthData(common, out_path);
    if (*featurize) return RunFeaturize(common, manifest, out_path);
    if (*train) {
      return RunTrain(common, manifest, features, out_path, subset, split_task,
                      split_role);
    }
    if (*embed) return RunEmbed(common, checkpoint, manifest, features, out_path);
    if (*probe_phone) {
      return RunProbePhone(common, checkpoint, manifest, features, out_path,
                           shuffle_labels);
    }
    if (*probe_speaker) {
      return RunProbeSpeaker(common, task, checkpoint, manifest, features,
                             out_path, shuffle_labels);
    }
    if (*sweep) {
      return RunSweepCmd(common, manifest, features, param, values_csv,
                         sweep_task, out_path);
    }
    if (*gradcheck) return RunGradCheck(tolerance);
  } catch (const Error &e) {
    nlohmann::json err = {
        {"error", {{"category", e.category()}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception &e) {
    nlohmann::json err = {
        {"error", {{"category", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
