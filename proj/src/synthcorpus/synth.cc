// synthcorpus/synth.cc

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

#include "synthcorpus/synth.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "util/common.h"
#include "util/rng.h"

namespace cjfe {
namespace {

constexpr int64_t kFeatDim = 80;
constexpr int64_t kShiftSamples = 160;  // 10 ms at 16 kHz
constexpr double kMaxPrototypeCos = 0.3;

std::string SpeakerId(int64_t s) {
  std::ostringstream os;
  os << "spk";
  os.width(3);
  os.fill('0');
  os << s;
  return os.str();
}

std::vector<double> RandomUnitVector(Rng *rng) {
  std::vector<double> v(kFeatDim);
  double norm = 0.0;
  do {
    rng->FillNormal(&v);
    norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  } while (norm < 1e-8);
  for (double &x : v) x /= norm;
  return v;
}

double Cosine(const std::vector<double> &a, const std::vector<double> &b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Per-utterance phone sequence and durations, deterministic in the utterance
// stream alone so index-only and full generation agree.
struct UttPlan {
  std::vector<int64_t> phones;
  std::vector<int64_t> durations;
  double gain_jitter = 0.0;
  int64_t TotalFrames() const {
    return std::accumulate(durations.begin(), durations.end(), int64_t{0});
  }
};

UttPlan PlanUtterance(const SynthSpec &spec, Rng *rng) {
  UttPlan plan;
  const int64_t n_phones_in_utt =
      spec.min_phones_per_utt +
      static_cast<int64_t>(rng->UniformInt(
          spec.max_phones_per_utt - spec.min_phones_per_utt + 1));
  for (int64_t i = 0; i < n_phones_in_utt; ++i) {
    plan.phones.push_back(static_cast<int64_t>(rng->UniformInt(spec.n_phones)));
    plan.durations.push_back(
        spec.min_duration +
        static_cast<int64_t>(
            rng->UniformInt(spec.max_duration - spec.min_duration + 1)));
  }
  plan.gain_jitter = rng->Normal(0.0, spec.utt_gain_scale * spec.noise_std);
  return plan;
}

UtteranceInfo PlanToInfo(const UttPlan &plan, const std::string &utt_id,
                         const std::string &speaker, const std::string &subset,
                         const std::vector<std::string> &phone_labels) {
  UtteranceInfo info;
  info.id = utt_id;
  info.speaker = speaker;
  info.subset = subset;
  int64_t frame = 0;
  for (size_t i = 0; i < plan.phones.size(); ++i) {
    PhoneInterval p;
    p.start_sample = frame * kShiftSamples;
    p.end_sample = (frame + plan.durations[i]) * kShiftSamples;
    p.label = phone_labels[plan.phones[i]];
    info.phones.push_back(std::move(p));
    frame += plan.durations[i];
  }
  return info;
}

}  // namespace

void SynthSpec::Validate() const {
  if (n_phones < 2) throw ContractError("synth: n_phones must be >= 2");
  if (n_speakers < 2) throw ContractError("synth: n_speakers must be >= 2");
  if (utterances_per_speaker != 8) {
    throw ContractError("synth: utterances_per_speaker must be 8 (split "
                        "construction uses 4 blocks of 2)");
  }
  if (min_duration < 1 || max_duration < min_duration) {
    throw ContractError("synth: bad phone duration range");
  }
  if (min_phones_per_utt < 1 || max_phones_per_utt < min_phones_per_utt) {
    throw ContractError("synth: bad phones-per-utterance range");
  }
  if (noise_std < 0.0 || tilt_std < 0.0 || gain_std < 0.0 || utt_gain_scale < 0.0) {
    throw ContractError("synth: stddevs must be >= 0");
  }
}

int64_t SynthSpec::NumTestSpeakers() const {
  int64_t n = static_cast<int64_t>(std::lround(n_speakers * 168.0 / 630.0));
  return std::max<int64_t>(1, std::min(n, n_speakers - 1));
}

CorpusIndex GenerateIndex(const SynthSpec &spec) {
  spec.Validate();
  CorpusIndex index;
  const int64_t n_test = spec.NumTestSpeakers();
  int64_t utt_counter = 0;
  for (int64_t s = 0; s < spec.n_speakers; ++s) {
    const std::string speaker = SpeakerId(s);
    const std::string subset = s >= spec.n_speakers - n_test ? "test" : "train";
    for (int64_t u = 0; u < spec.utterances_per_speaker; ++u, ++utt_counter) {
      Rng rng = Rng::Derive(spec.seed, 0xa770 + utt_counter);
      UttPlan plan = PlanUtterance(spec, &rng);
      std::string utt_id = speaker + "_u" + std::to_string(u);
      std::vector<std::string> labels(spec.n_phones);
      for (int64_t p = 0; p < spec.n_phones; ++p) labels[p] = "ph" + std::to_string(p);
      index.utterances.push_back(
          PlanToInfo(plan, utt_id, speaker, subset, labels));
    }
  }
  index.Finalize();
  return index;
}

SynthCorpus Generate(const SynthSpec &spec) {
  spec.Validate();
  SynthCorpus corpus;
  for (int64_t p = 0; p < spec.n_phones; ++p) {
    corpus.phone_labels.push_back("ph" + std::to_string(p));
  }

  // Prototypes: unit sphere, minimum pairwise angle enforced by rejection.
  Rng proto_rng = Rng::Derive(spec.seed, 0xf0e1);
  for (int64_t p = 0; p < spec.n_phones; ++p) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) {
        throw ContractError("synth: cannot place " +
                            std::to_string(spec.n_phones) +
                            " prototypes with pairwise cos <= " +
                            std::to_string(kMaxPrototypeCos));
      }
      std::vector<double> cand = RandomUnitVector(&proto_rng);
      bool ok = true;
      for (const auto &other : corpus.phone_prototypes) {
        if (std::abs(Cosine(cand, other)) > kMaxPrototypeCos) {
          ok = false;
          break;
        }
      }
      if (ok) {
        corpus.phone_prototypes.push_back(std::move(cand));
        break;
      }
    }
  }

  Rng spk_rng = Rng::Derive(spec.seed, 0x5b);
  const int64_t n_test = spec.NumTestSpeakers();
  for (int64_t s = 0; s < spec.n_speakers; ++s) {
    const std::string speaker = SpeakerId(s);
    std::vector<double> tilt = RandomUnitVector(&spk_rng);
    for (double &x : tilt) x *= spec.tilt_std;
    corpus.speaker_tilt[speaker] = std::move(tilt);
    corpus.speaker_gain[speaker] = spk_rng.Normal(0.0, spec.gain_std);
  }

  int64_t utt_counter = 0;
  for (int64_t s = 0; s < spec.n_speakers; ++s) {
    const std::string speaker = SpeakerId(s);
    const std::string subset = s >= spec.n_speakers - n_test ? "test" : "train";
    const std::vector<double> &tilt = corpus.speaker_tilt[speaker];
    for (int64_t u = 0; u < spec.utterances_per_speaker; ++u, ++utt_counter) {
      Rng rng = Rng::Derive(spec.seed, 0xa770 + utt_counter);
      UttPlan plan = PlanUtterance(spec, &rng);
      const std::string utt_id = speaker + "_u" + std::to_string(u);
      corpus.index.utterances.push_back(
          PlanToInfo(plan, utt_id, speaker, subset, corpus.phone_labels));

      const double gain = corpus.speaker_gain[speaker] + plan.gain_jitter;
      corpus.utterance_gain[utt_id] = gain;

      FeatureMatrix feat;
      feat.utterance_id = utt_id;
      feat.frame_shift = 0.010;
      feat.sample_rate = 16000;
      feat.frames = Matrix(plan.TotalFrames(), kFeatDim);
      int64_t frame = 0;
      for (size_t seg = 0; seg < plan.phones.size(); ++seg) {
        const std::vector<double> &proto = corpus.phone_prototypes[plan.phones[seg]];
        for (int64_t d = 0; d < plan.durations[seg]; ++d, ++frame) {
          for (int64_t m = 0; m < kFeatDim; ++m) {
            feat.frames.At(frame, m) =
                proto[m] + tilt[m] + gain + rng.Normal(0.0, spec.noise_std);
          }
        }
      }
      corpus.features.emplace(utt_id, std::move(feat));
    }
  }
  corpus.index.Finalize();
  return corpus;
}

double OracleFrameAccuracy(const SynthCorpus &corpus) {
  int64_t correct = 0, total = 0;
  std::vector<double> residual(kFeatDim);
  for (const auto &utt : corpus.index.utterances) {
    const FeatureMatrix &feat = corpus.features.at(utt.id);
    const std::vector<double> &tilt = corpus.speaker_tilt.at(utt.speaker);
    const double gain = corpus.utterance_gain.at(utt.id);
    const auto segments =
        PhoneSegments(utt, kShiftSamples, feat.NumFrames());
    for (const auto &seg : segments) {
      int64_t true_phone = -1;
      for (size_t p = 0; p < corpus.phone_labels.size(); ++p) {
        if (corpus.phone_labels[p] == seg.label) {
          true_phone = static_cast<int64_t>(p);
          break;
        }
      }
      for (int64_t t = seg.start_frame; t < seg.end_frame; ++t) {
        for (int64_t m = 0; m < kFeatDim; ++m) {
          residual[m] = feat.frames.At(t, m) - tilt[m] - gain;
        }
        int64_t best = 0;
        double best_d = 0.0;
        for (size_t p = 0; p < corpus.phone_prototypes.size(); ++p) {
          const std::vector<double> &proto = corpus.phone_prototypes[p];
          double d = 0.0;
          for (int64_t m = 0; m < kFeatDim; ++m) {
            double diff = residual[m] - proto[m];
            d += diff * diff;
          }
          if (p == 0 || d < best_d) {
            best_d = d;
            best = static_cast<int64_t>(p);
          }
        }
        correct += best == true_phone ? 1 : 0;
        ++total;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / total;
}

}  // namespace cjfe
