// frontend/wav.h

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

#ifndef CJFE_FRONTEND_WAV_H_
#define CJFE_FRONTEND_WAV_H_

#include <string>
#include <vector>

namespace cjfe {

struct AudioBuffer {
  std::vector<double> samples;  // in [-1, 1]
  int sample_rate = 0;
};

// Decodes 16-bit mono PCM from either a RIFF WAV file or a NIST SPHERE file
// (magic "NIST_1A"; the 1024-byte ASCII header supplies rate/channels/byte
// order, payload follows). Integer samples are scaled by 1/32768.
AudioBuffer LoadWav(const std::string &path);

}  // namespace cjfe

#endif  // CJFE_FRONTEND_WAV_H_
