// probe/splits.h

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

#ifndef CJFE_PROBE_SPLITS_H_
#define CJFE_PROBE_SPLITS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "segmenter/manifest.h"

namespace cjfe {

// Blocks A-D partition the official training utterances (2 per speaker per
// block, randomly assigned); E-H likewise partition the test utterances.
struct SplitPlan {
  std::array<std::vector<std::string>, 8> blocks;  // A..H, each sorted

  const std::vector<std::string> &Block(char name) const;
};

// Speaker-recognition data roles for one task configuration.
struct TaskSplit {
  char task = 'a';
  std::vector<std::string> embed_train;  // encoder training utterances
  std::vector<std::string> clf_train;    // classifier training utterances
  std::vector<std::string> test;
};

// Seeded random assignment. Every speaker must have exactly 8 utterances.
SplitPlan MakeSplits(const CorpusIndex &corpus, uint64_t seed);

// Task a: embed = clf = A+B+C+E+F+G, test = D+H.
// Task b: embed = A+B+E+F, clf = C+G, test = D+H.
// Task c: embed = A+B+C+D, clf = E+G, test = F+H.
TaskSplit GetTask(const SplitPlan &plan, char task);

}  // namespace cjfe

#endif  // CJFE_PROBE_SPLITS_H_
