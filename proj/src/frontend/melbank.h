// frontend/melbank.h

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

#ifndef CJFE_FRONTEND_MELBANK_H_
#define CJFE_FRONTEND_MELBANK_H_

#include <string>

#include "frontend/wav.h"
#include "util/matrix.h"

namespace cjfe {

struct DspConfig {
  double frame_length_ms = 25.0;
  double frame_shift_ms = 10.0;
  int64_t fft_size = 512;   // power of two, >= frame samples
  int64_t n_mels = 80;
  double fmin_hz = 20.0;
  double fmax_hz = 7600.0;
  double log_floor = 1e-10;
  bool standardize = false;  // per-corpus mean/var normalization downstream

  void Validate(int sample_rate) const;
  int64_t FrameSamples(int sample_rate) const;
  int64_t ShiftSamples(int sample_rate) const;
};

// One utterance's frame sequence: T x 80 log-Mel energies.
struct FeatureMatrix {
  std::string utterance_id;
  double frame_shift = 0.010;  // seconds
  int sample_rate = 16000;
  Matrix frames;               // T x n_mels

  int64_t NumFrames() const { return frames.rows; }
};

// Hann window -> magnitude-squared FFT -> triangular HTK-Mel filterbank
// (2595 * log10(1 + f/700)) -> natural log with floor.
// T = floor((len - frame) / shift) + 1; audio shorter than a frame is an error.
FeatureMatrix LogMel(const AudioBuffer &audio, const DspConfig &cfg,
                     const std::string &utterance_id);

// Center frequency (Hz) of each triangular filter; exposed for diagnostics.
std::vector<double> MelFilterCenters(const DspConfig &cfg, int sample_rate);

}  // namespace cjfe

#endif  // CJFE_FRONTEND_MELBANK_H_
