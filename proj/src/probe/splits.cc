// probe/splits.cc

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

#include "probe/splits.h"

#include <algorithm>

#include "util/common.h"
#include "util/hash.h"
#include "util/rng.h"

namespace cjfe {

const std::vector<std::string> &SplitPlan::Block(char name) const {
  if (name < 'A' || name > 'H') {
    throw ContractError(std::string("split: unknown block '") + name + "'");
  }
  return blocks[name - 'A'];
}

SplitPlan MakeSplits(const CorpusIndex &corpus, uint64_t seed) {
  SplitPlan plan;
  bool any_train = false, any_test = false;
  for (const auto &[speaker, indices] : corpus.by_speaker) {
    if (indices.size() != 8) {
      throw DataError("split: speaker '" + speaker + "' has " +
                      std::to_string(indices.size()) +
                      " utterances; exactly 8 are required");
    }
    const std::string subset = corpus.utterances[indices[0]].subset;
    for (int64_t idx : indices) {
      if (corpus.utterances[idx].subset != subset) {
        throw DataError("split: speaker '" + speaker +
                        "' appears in both official subsets");
      }
    }
    std::vector<std::string> ids;
    ids.reserve(8);
    for (int64_t idx : indices) ids.push_back(corpus.utterances[idx].id);
    std::sort(ids.begin(), ids.end());
    // Per-speaker stream: the assignment is stable under corpus reordering.
    Rng rng = Rng::Derive(seed, Fnv1a64(speaker));
    rng.Shuffle(&ids);
    const int base = subset == "train" ? 0 : 4;  // A..D or E..H
    if (subset == "train") any_train = true;
    else any_test = true;
    for (int block = 0; block < 4; ++block) {
      plan.blocks[base + block].push_back(ids[2 * block]);
      plan.blocks[base + block].push_back(ids[2 * block + 1]);
    }
  }
  if (!any_train || !any_test) {
    throw DataError("split: corpus must contain both official train and test "
                    "speakers");
  }
  for (auto &block : plan.blocks) std::sort(block.begin(), block.end());
  return plan;
}

namespace {

std::vector<std::string> Union(const SplitPlan &plan, const char *names) {
  std::vector<std::string> out;
  for (const char *p = names; *p; ++p) {
    const auto &block = plan.Block(*p);
    out.insert(out.end(), block.begin(), block.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TaskSplit GetTask(const SplitPlan &plan, char task) {
  TaskSplit split;
  split.task = task;
  switch (task) {
    case 'a':
      split.embed_train = Union(plan, "ABCEFG");
      split.clf_train = split.embed_train;
      split.test = Union(plan, "DH");
      break;
    case 'b':
      split.embed_train = Union(plan, "ABEF");
      split.clf_train = Union(plan, "CG");
      split.test = Union(plan, "DH");
      break;
    case 'c':
      split.embed_train = Union(plan, "ABCD");
      split.clf_train = Union(plan, "EG");
      split.test = Union(plan, "FH");
      break;
    default:
      throw ContractError(std::string("split: unknown task '") + task +
                          "' (expected a, b or c)");
  }
  return split;
}

}  // namespace cjfe
