// synthcorpus/synth.h

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

#ifndef CJFE_SYNTHCORPUS_SYNTH_H_
#define CJFE_SYNTHCORPUS_SYNTH_H_

#include <map>
#include <string>
#include <vector>

#include "frontend/melbank.h"
#include "segmenter/manifest.h"

namespace cjfe {

// Synthetic corpus with known phone and speaker latent factors. Frames are
// generated directly in feature space (the DSP frontend is bypassed):
//   frame = prototype[phone] + tilt[speaker] + utterance_gain + noise.
// Prototypes live on the unit sphere with a minimum pairwise angle; the
// speaker tilt carries comparable energy so both probes are non-trivial. The
// per-utterance gain is the speaker's base gain plus a jitter proportional
// to noise_std, so noise_std = 0 collapses all stochastic nuisance.
struct SynthSpec {
  int64_t n_phones = 8;
  int64_t n_speakers = 6;
  int64_t utterances_per_speaker = 8;  // pinned: split construction needs 8
  int64_t min_duration = 5;            // frames per phone segment
  int64_t max_duration = 20;
  int64_t min_phones_per_utt = 12;
  int64_t max_phones_per_utt = 20;
  double noise_std = 0.15;
  double tilt_std = 1.0;       // norm of the speaker tilt vector
  double gain_std = 0.4;       // spread of per-speaker base gain
  double utt_gain_scale = 2.0; // utterance gain jitter = scale * noise_std
  uint64_t seed = 17;

  void Validate() const;
  // TIMIT-proportioned official split: round(n_speakers * 168 / 630),
  // clamped to [1, n_speakers - 1].
  int64_t NumTestSpeakers() const;
};

struct SynthCorpus {
  CorpusIndex index;
  std::map<std::string, FeatureMatrix> features;

  // Generator latents, kept for the oracle and for diagnostics.
  std::vector<std::string> phone_labels;
  std::vector<std::vector<double>> phone_prototypes;    // unit norm
  std::map<std::string, std::vector<double>> speaker_tilt;
  std::map<std::string, double> speaker_gain;
  std::map<std::string, double> utterance_gain;         // base gain + jitter
};

// Index only (manifest-level corpus, no feature matrices); enough for split
// construction at any speaker count.
CorpusIndex GenerateIndex(const SynthSpec &spec);

SynthCorpus Generate(const SynthSpec &spec);

// Bayes oracle: fraction of frames whose nearest prototype, after removing
// the known speaker tilt and utterance gain, is the generating phone. Upper
// bound for what any phone probe can achieve.
double OracleFrameAccuracy(const SynthCorpus &corpus);

}  // namespace cjfe

#endif  // CJFE_SYNTHCORPUS_SYNTH_H_
