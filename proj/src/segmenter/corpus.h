// segmenter/corpus.h

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

#ifndef CJFE_SEGMENTER_CORPUS_H_
#define CJFE_SEGMENTER_CORPUS_H_

#include <map>
#include <string>
#include <vector>

#include "frontend/melbank.h"
#include "segmenter/manifest.h"

namespace cjfe {

// A fully loaded corpus: manifest index plus one feature matrix per
// utterance. Downstream code cannot tell synthetic from real data.
struct Corpus {
  CorpusIndex index;
  std::map<std::string, FeatureMatrix> features;

  const FeatureMatrix &Features(const std::string &utterance_id) const {
    auto it = features.find(utterance_id);
    if (it == features.end()) {
      throw DataError("corpus: no features for utterance '" + utterance_id + "'");
    }
    return it->second;
  }

  int64_t ShiftSamples(const FeatureMatrix &feat) const {
    return static_cast<int64_t>(feat.sample_rate * feat.frame_shift + 0.5);
  }

  // Utterances whose id is in `ids`, in sorted order.
  std::vector<std::string> CheckIds(const std::vector<std::string> &ids) const {
    std::vector<std::string> out = ids;
    for (const auto &id : out) (void)index.Find(id);
    return out;
  }
};

}  // namespace cjfe

#endif  // CJFE_SEGMENTER_CORPUS_H_
