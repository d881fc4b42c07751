// segmenter/windowing.h

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

#ifndef CJFE_SEGMENTER_WINDOWING_H_
#define CJFE_SEGMENTER_WINDOWING_H_

#include <vector>

#include "frontend/melbank.h"
#include "segmenter/manifest.h"
#include "util/matrix.h"

namespace cjfe {

struct WindowConfig {
  int64_t target_len = 10;     // C
  int64_t neighbour_len = 10;  // N, single-sided
  int64_t stride = 1;

  void Validate() const;
  int64_t TotalSpan() const { return target_len + 2 * neighbour_len; }
};

// One (X_t, Y_t) pair: the target window and its concatenated left+right
// neighbours, in temporal order.
struct WindowSample {
  std::string utterance_id;
  int64_t t = 0;  // start frame of the target window (may be negative for
                  // the centre-padded short-segment case)
  Matrix x;       // target_len x 80
  Matrix y;       // 2 * neighbour_len x 80
};

// All windows with full left/right context inside the utterance, ordered by
// t. Utterances shorter than C + 2N yield an empty sequence (the caller logs
// the skip); this matches training, where edge windows are dropped.
std::vector<WindowSample> ExtractWindows(const FeatureMatrix &features,
                                         const WindowConfig &cfg);

// Probing variant: every window whose target lies fully inside the segment.
// Neighbour context may extend past the segment (and past the utterance, in
// which case edge frames are replicated). Segments shorter than C yield one
// centre-padded window built from replicated segment-edge frames.
std::vector<WindowSample> SegmentWindows(const FeatureMatrix &features,
                                         const LabelledSegment &segment,
                                         const WindowConfig &cfg);

}  // namespace cjfe

#endif  // CJFE_SEGMENTER_WINDOWING_H_
