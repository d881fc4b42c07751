// segmenter/windowing.cc

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

#include "segmenter/windowing.h"

#include <algorithm>

#include "util/common.h"

namespace cjfe {
namespace {

void CopyRow(const Matrix &src, int64_t src_row, Matrix *dst, int64_t dst_row) {
  std::copy(src.Row(src_row).begin(), src.Row(src_row).end(),
            dst->Row(dst_row).begin());
}

int64_t Clamp(int64_t v, int64_t lo, int64_t hi) {
  return std::max(lo, std::min(v, hi));
}

// y = [N rows ending at t) ++ [N rows from t + C), utterance-edge clamped.
void FillNeighbours(const Matrix &frames, int64_t t, const WindowConfig &cfg,
                    Matrix *y) {
  const int64_t max_row = frames.rows - 1;
  for (int64_t i = 0; i < cfg.neighbour_len; ++i) {
    CopyRow(frames, Clamp(t - cfg.neighbour_len + i, 0, max_row), y, i);
    CopyRow(frames, Clamp(t + cfg.target_len + i, 0, max_row), y,
            cfg.neighbour_len + i);
  }
}

}  // namespace

void WindowConfig::Validate() const {
  if (target_len < 1 || neighbour_len < 1 || stride < 1) {
    throw ContractError("window config: target_len, neighbour_len and stride "
                        "must all be >= 1");
  }
}

std::vector<WindowSample> ExtractWindows(const FeatureMatrix &features,
                                         const WindowConfig &cfg) {
  cfg.Validate();
  const int64_t T = features.NumFrames();
  const int64_t C = cfg.target_len, N = cfg.neighbour_len;
  std::vector<WindowSample> samples;
  if (T < C + 2 * N) return samples;  // caller logs the skip
  for (int64_t t = N; t + C + N <= T; t += cfg.stride) {
    WindowSample s;
    s.utterance_id = features.utterance_id;
    s.t = t;
    s.x = Matrix(C, features.frames.cols);
    s.y = Matrix(2 * N, features.frames.cols);
    for (int64_t r = 0; r < C; ++r) CopyRow(features.frames, t + r, &s.x, r);
    for (int64_t i = 0; i < N; ++i) {
      CopyRow(features.frames, t - N + i, &s.y, i);
      CopyRow(features.frames, t + C + i, &s.y, N + i);
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<WindowSample> SegmentWindows(const FeatureMatrix &features,
                                         const LabelledSegment &segment,
                                         const WindowConfig &cfg) {
  cfg.Validate();
  const int64_t T = features.NumFrames();
  if (segment.start_frame < 0 || segment.start_frame >= segment.end_frame ||
      segment.end_frame > T) {
    throw ContractError("segment_windows: segment [" +
                        std::to_string(segment.start_frame) + ", " +
                        std::to_string(segment.end_frame) +
                        ") invalid for utterance of " + std::to_string(T) +
                        " frames");
  }
  const int64_t C = cfg.target_len, N = cfg.neighbour_len;
  const int64_t len = segment.end_frame - segment.start_frame;
  std::vector<WindowSample> samples;

  if (len >= C) {
    for (int64_t t = segment.start_frame; t + C <= segment.end_frame;
         t += cfg.stride) {
      WindowSample s;
      s.utterance_id = features.utterance_id;
      s.t = t;
      s.x = Matrix(C, features.frames.cols);
      s.y = Matrix(2 * N, features.frames.cols);
      for (int64_t r = 0; r < C; ++r) CopyRow(features.frames, t + r, &s.x, r);
      FillNeighbours(features.frames, t, cfg, &s.y);
      samples.push_back(std::move(s));
    }
    return samples;
  }

  // Short segment: one centre-padded window, edge frames replicated.
  const int64_t left_pad = (C - len) / 2;
  const int64_t t_eff = segment.start_frame - left_pad;
  WindowSample s;
  s.utterance_id = features.utterance_id;
  s.t = t_eff;
  s.x = Matrix(C, features.frames.cols);
  s.y = Matrix(2 * N, features.frames.cols);
  for (int64_t r = 0; r < C; ++r) {
    int64_t src = Clamp(t_eff + r, segment.start_frame, segment.end_frame - 1);
    CopyRow(features.frames, src, &s.x, r);
  }
  FillNeighbours(features.frames, t_eff, cfg, &s.y);
  samples.push_back(std::move(s));
  return samples;
}

}  // namespace cjfe
