// workbench/runconfig.cc

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

#include "workbench/runconfig.h"

#include <fstream>
#include <sstream>

#include "util/common.h"
#include "util/hash.h"

namespace cjfe {

using nlohmann::json;

namespace {

void CheckKeys(const json &j, std::initializer_list<const char *> allowed,
               const std::string &section) {
  if (!j.is_object()) {
    throw FormatError("config: section '" + section + "' must be an object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char *key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw FormatError("config: unknown key '" + it.key() + "' in section '" +
                        section + "'");
    }
  }
}

template <typename T>
void Maybe(const json &j, const char *key, T *out) {
  if (j.contains(key)) *out = j.at(key).get<T>();
}

}  // namespace

json ArchToJson(const ArchConfig &arch) {
  return json{{"embed_dim", arch.embed_dim},
              {"conv_channels", arch.conv_channels},
              {"fc_units", arch.fc_units},
              {"leaky_slope", arch.leaky_slope},
              {"bn_epsilon", arch.bn_epsilon},
              {"bn_momentum", arch.bn_momentum},
              {"kl_weight", arch.kl_weight}};
}

ArchConfig ArchFromJson(const json &j) {
  CheckKeys(j,
            {"embed_dim", "conv_channels", "fc_units", "leaky_slope",
             "bn_epsilon", "bn_momentum", "kl_weight"},
            "arch");
  ArchConfig arch;
  Maybe(j, "embed_dim", &arch.embed_dim);
  if (j.contains("conv_channels")) {
    auto v = j.at("conv_channels").get<std::vector<int64_t>>();
    if (v.size() != 3) {
      throw FormatError("config: arch.conv_channels must list 3 layers");
    }
    arch.conv_channels = {v[0], v[1], v[2]};
  }
  Maybe(j, "fc_units", &arch.fc_units);
  Maybe(j, "leaky_slope", &arch.leaky_slope);
  Maybe(j, "bn_epsilon", &arch.bn_epsilon);
  Maybe(j, "bn_momentum", &arch.bn_momentum);
  Maybe(j, "kl_weight", &arch.kl_weight);
  return arch;
}

RunConfig RunConfig::FromJson(const json &j) {
  CheckKeys(j, {"seed", "dsp", "window", "arch", "optim", "probe", "synth"},
            "(top level)");
  RunConfig cfg;
  Maybe(j, "seed", &cfg.seed);
  if (j.contains("dsp")) {
    const json &d = j.at("dsp");
    CheckKeys(d,
              {"frame_length_ms", "frame_shift_ms", "fft_size", "n_mels",
               "fmin_hz", "fmax_hz", "log_floor", "standardize"},
              "dsp");
    Maybe(d, "frame_length_ms", &cfg.dsp.frame_length_ms);
    Maybe(d, "frame_shift_ms", &cfg.dsp.frame_shift_ms);
    Maybe(d, "fft_size", &cfg.dsp.fft_size);
    Maybe(d, "n_mels", &cfg.dsp.n_mels);
    Maybe(d, "fmin_hz", &cfg.dsp.fmin_hz);
    Maybe(d, "fmax_hz", &cfg.dsp.fmax_hz);
    Maybe(d, "log_floor", &cfg.dsp.log_floor);
    Maybe(d, "standardize", &cfg.dsp.standardize);
  }
  if (j.contains("window")) {
    const json &w = j.at("window");
    CheckKeys(w, {"target_len", "neighbour_len", "stride"}, "window");
    Maybe(w, "target_len", &cfg.window.target_len);
    Maybe(w, "neighbour_len", &cfg.window.neighbour_len);
    Maybe(w, "stride", &cfg.window.stride);
  }
  if (j.contains("arch")) cfg.arch = ArchFromJson(j.at("arch"));
  if (j.contains("optim")) {
    const json &o = j.at("optim");
    CheckKeys(o,
              {"lr", "beta1", "beta2", "epsilon", "batch_size", "max_steps",
               "grad_clip"},
              "optim");
    Maybe(o, "lr", &cfg.optim.lr);
    Maybe(o, "beta1", &cfg.optim.beta1);
    Maybe(o, "beta2", &cfg.optim.beta2);
    Maybe(o, "epsilon", &cfg.optim.epsilon);
    Maybe(o, "batch_size", &cfg.optim.batch_size);
    Maybe(o, "max_steps", &cfg.optim.max_steps);
    Maybe(o, "grad_clip", &cfg.optim.grad_clip);
  }
  if (j.contains("probe")) {
    const json &p = j.at("probe");
    CheckKeys(p, {"hidden_units", "head", "steps", "batch_size", "lr"}, "probe");
    Maybe(p, "hidden_units", &cfg.probe.hidden_units);
    Maybe(p, "head", &cfg.probe.head);
    Maybe(p, "steps", &cfg.probe.steps);
    Maybe(p, "batch_size", &cfg.probe.batch_size);
    Maybe(p, "lr", &cfg.probe.lr);
  }
  if (j.contains("synth")) {
    const json &s = j.at("synth");
    CheckKeys(s,
              {"n_phones", "n_speakers", "utterances_per_speaker",
               "min_duration", "max_duration", "min_phones_per_utt",
               "max_phones_per_utt", "noise_std", "tilt_std", "gain_std",
               "utt_gain_scale"},
              "synth");
    Maybe(s, "n_phones", &cfg.synth.n_phones);
    Maybe(s, "n_speakers", &cfg.synth.n_speakers);
    Maybe(s, "utterances_per_speaker", &cfg.synth.utterances_per_speaker);
    Maybe(s, "min_duration", &cfg.synth.min_duration);
    Maybe(s, "max_duration", &cfg.synth.max_duration);
    Maybe(s, "min_phones_per_utt", &cfg.synth.min_phones_per_utt);
    Maybe(s, "max_phones_per_utt", &cfg.synth.max_phones_per_utt);
    Maybe(s, "noise_std", &cfg.synth.noise_std);
    Maybe(s, "tilt_std", &cfg.synth.tilt_std);
    Maybe(s, "gain_std", &cfg.synth.gain_std);
    Maybe(s, "utt_gain_scale", &cfg.synth.utt_gain_scale);
  }
  cfg.Validate();
  return cfg;
}

RunConfig RunConfig::FromJsonFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw FormatError("config '" + path + "': " + e.what());
  }
  return FromJson(j);
}

json RunConfig::ToJson() const {
  json j;
  j["seed"] = seed;
  j["dsp"] = {{"frame_length_ms", dsp.frame_length_ms},
              {"frame_shift_ms", dsp.frame_shift_ms},
              {"fft_size", dsp.fft_size},
              {"n_mels", dsp.n_mels},
              {"fmin_hz", dsp.fmin_hz},
              {"fmax_hz", dsp.fmax_hz},
              {"log_floor", dsp.log_floor},
              {"standardize", dsp.standardize}};
  j["window"] = {{"target_len", window.target_len},
                 {"neighbour_len", window.neighbour_len},
                 {"stride", window.stride}};
  j["arch"] = ArchToJson(arch);
  j["optim"] = {{"lr", optim.lr},
                {"beta1", optim.beta1},
                {"beta2", optim.beta2},
                {"epsilon", optim.epsilon},
                {"batch_size", optim.batch_size},
                {"max_steps", optim.max_steps},
                {"grad_clip", optim.grad_clip}};
  j["probe"] = {{"hidden_units", probe.hidden_units},
                {"head", probe.head},
                {"steps", probe.steps},
                {"batch_size", probe.batch_size},
                {"lr", probe.lr}};
  j["synth"] = {{"n_phones", synth.n_phones},
                {"n_speakers", synth.n_speakers},
                {"utterances_per_speaker", synth.utterances_per_speaker},
                {"min_duration", synth.min_duration},
                {"max_duration", synth.max_duration},
                {"min_phones_per_utt", synth.min_phones_per_utt},
                {"max_phones_per_utt", synth.max_phones_per_utt},
                {"noise_std", synth.noise_std},
                {"tilt_std", synth.tilt_std},
                {"gain_std", synth.gain_std},
                {"utt_gain_scale", synth.utt_gain_scale}};
  return j;
}

void RunConfig::Validate() const {
  window.Validate();
  arch.Validate();
  MakeOptimConfig().Validate();
  MakeSynthSpec().Validate();
  if (probe.hidden_units < 1 || probe.steps < 0 || probe.batch_size < 1 ||
      !(probe.lr > 0.0)) {
    throw ContractError("config: bad probe section");
  }
  if (probe.head != "mlp" && probe.head != "tconv") {
    throw ContractError("config: probe.head must be 'mlp' or 'tconv'");
  }
}

std::string RunConfig::Digest() const {
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << Fnv1a64(ToJson().dump());
  return os.str();
}

ProbeRunConfig RunConfig::MakeProbeRunConfig() const {
  ProbeRunConfig p;
  p.window = window;
  p.hidden_units = probe.hidden_units;
  p.head = probe.head;
  p.leaky_slope = arch.leaky_slope;
  p.optim.lr = probe.lr;
  p.optim.beta1 = optim.beta1;
  p.optim.beta2 = optim.beta2;
  p.optim.epsilon = optim.epsilon;
  p.optim.batch_size = probe.batch_size;
  p.optim.max_steps = probe.steps;
  p.optim.seed = seed;
  p.config_digest = Digest();
  return p;
}

OptimConfig RunConfig::MakeOptimConfig() const {
  OptimConfig o = optim;
  o.seed = seed;
  return o;
}

SynthSpec RunConfig::MakeSynthSpec() const {
  SynthSpec s = synth;
  s.seed = seed;
  return s;
}

}  // namespace cjfe
