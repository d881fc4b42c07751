// frontend/melbank.cc

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

#include "frontend/melbank.h"

#include <cmath>
#include <complex>
#include <vector>

#include "util/common.h"

namespace cjfe {
namespace {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

bool IsPowerOfTwo(int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 complex FFT, in place.
void Fft(std::vector<std::complex<double>> *buf) {
  const size_t n = buf->size();
  // Bit reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap((*buf)[i], (*buf)[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double angle = -2.0 * M_PI / static_cast<double>(len);
    std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = (*buf)[i + k];
        std::complex<double> v = (*buf)[i + k + len / 2] * w;
        (*buf)[i + k] = u + v;
        (*buf)[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// filters[m * n_bins + k]: weight of FFT bin k in triangular filter m.
std::vector<double> BuildMelFilters(const DspConfig &cfg, int sample_rate,
                                    int64_t n_bins) {
  const double mel_lo = HzToMel(cfg.fmin_hz);
  const double mel_hi = HzToMel(cfg.fmax_hz);
  std::vector<double> edges(cfg.n_mels + 2);
  for (int64_t m = 0; m < cfg.n_mels + 2; ++m) {
    edges[m] = MelToHz(mel_lo + (mel_hi - mel_lo) * m / (cfg.n_mels + 1));
  }
  std::vector<double> filters(cfg.n_mels * n_bins, 0.0);
  const double bin_hz = static_cast<double>(sample_rate) / cfg.fft_size;
  for (int64_t m = 0; m < cfg.n_mels; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (int64_t k = 0; k < n_bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f >= left && f <= center && center > left) {
        w = (f - left) / (center - left);
      } else if (f > center && f <= right && right > center) {
        w = (right - f) / (right - center);
      }
      filters[m * n_bins + k] = w;
    }
  }
  return filters;
}

}  // namespace

void DspConfig::Validate(int sample_rate) const {
  if (sample_rate <= 0) throw ContractError("dsp: sample_rate must be > 0");
  if (n_mels != 80) {
    throw ContractError("dsp: n_mels must be 80, got " + std::to_string(n_mels));
  }
  if (!IsPowerOfTwo(fft_size)) {
    throw ContractError("dsp: fft_size must be a power of two, got " +
                        std::to_string(fft_size));
  }
  if (fft_size < FrameSamples(sample_rate)) {
    throw ContractError("dsp: fft_size " + std::to_string(fft_size) +
                        " < frame samples " +
                        std::to_string(FrameSamples(sample_rate)));
  }
  if (!(fmin_hz < fmax_hz && fmax_hz <= sample_rate / 2.0)) {
    throw ContractError("dsp: need fmin < fmax <= sample_rate/2");
  }
  if (!(log_floor > 0.0)) throw ContractError("dsp: log_floor must be > 0");
  if (!(frame_length_ms > 0.0 && frame_shift_ms > 0.0)) {
    throw ContractError("dsp: frame length/shift must be > 0");
  }
}

int64_t DspConfig::FrameSamples(int sample_rate) const {
  return static_cast<int64_t>(std::lround(sample_rate * frame_length_ms / 1000.0));
}

int64_t DspConfig::ShiftSamples(int sample_rate) const {
  return static_cast<int64_t>(std::lround(sample_rate * frame_shift_ms / 1000.0));
}

std::vector<double> MelFilterCenters(const DspConfig &cfg, int sample_rate) {
  cfg.Validate(sample_rate);
  const double mel_lo = HzToMel(cfg.fmin_hz);
  const double mel_hi = HzToMel(cfg.fmax_hz);
  std::vector<double> centers(cfg.n_mels);
  for (int64_t m = 0; m < cfg.n_mels; ++m) {
    centers[m] = MelToHz(mel_lo + (mel_hi - mel_lo) * (m + 1) / (cfg.n_mels + 1));
  }
  return centers;
}

FeatureMatrix LogMel(const AudioBuffer &audio, const DspConfig &cfg,
                     const std::string &utterance_id) {
  cfg.Validate(audio.sample_rate);
  const int64_t frame = cfg.FrameSamples(audio.sample_rate);
  const int64_t shift = cfg.ShiftSamples(audio.sample_rate);
  const int64_t len = static_cast<int64_t>(audio.samples.size());
  if (len < frame) {
    throw DataError("log_mel: utterance '" + utterance_id + "' has " +
                    std::to_string(len) + " samples, shorter than one frame (" +
                    std::to_string(frame) + ")");
  }
  const int64_t num_frames = (len - frame) / shift + 1;
  const int64_t n_bins = cfg.fft_size / 2 + 1;

  std::vector<double> window(frame);
  for (int64_t i = 0; i < frame; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (frame - 1));
  }
  const std::vector<double> filters = BuildMelFilters(cfg, audio.sample_rate, n_bins);

  FeatureMatrix feat;
  feat.utterance_id = utterance_id;
  feat.frame_shift = cfg.frame_shift_ms / 1000.0;
  feat.sample_rate = audio.sample_rate;
  feat.frames = Matrix(num_frames, cfg.n_mels);

  std::vector<std::complex<double>> buf(cfg.fft_size);
  std::vector<double> power(n_bins);
  for (int64_t t = 0; t < num_frames; ++t) {
    const double *seg = audio.samples.data() + t * shift;
    for (int64_t i = 0; i < frame; ++i) buf[i] = seg[i] * window[i];
    for (int64_t i = frame; i < cfg.fft_size; ++i) buf[i] = 0.0;
    Fft(&buf);
    for (int64_t k = 0; k < n_bins; ++k) power[k] = std::norm(buf[k]);
    for (int64_t m = 0; m < cfg.n_mels; ++m) {
      const double *w = filters.data() + m * n_bins;
      double e = 0.0;
      for (int64_t k = 0; k < n_bins; ++k) e += w[k] * power[k];
      feat.frames.At(t, m) = std::log(std::max(e, cfg.log_floor));
    }
  }
  return feat;
}

}  // namespace cjfe
