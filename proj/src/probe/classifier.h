// probe/classifier.h

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

#ifndef CJFE_PROBE_CLASSIFIER_H_
#define CJFE_PROBE_CLASSIFIER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gradcore/paramset.h"
#include "trainer/adam.h"
#include "util/matrix.h"

namespace cjfe {

struct ProbeClassifierConfig {
  int64_t input_dim = 150;    // K, or 3K for the "tconv" head
  int64_t hidden_units = 512;
  int64_t n_classes = 0;
  double leaky_slope = 0.01;
  std::string head = "mlp";   // "mlp" | "tconv" (context-concat input)
  OptimConfig optim;          // probe training budget/seed

  void Validate() const;
};

// Lightweight frozen-embedding probe: dense -> leaky ReLU -> dense, trained
// with softmax cross-entropy and Adam.
class ProbeClassifier {
 public:
  explicit ProbeClassifier(const ProbeClassifierConfig &cfg);

  // Cross-entropy training on (embedding, label) pairs. Every class in
  // [0, n_classes) must occur at least once in `labels`.
  void Train(const Matrix &embeddings, const std::vector<int64_t> &labels);

  // Per-row log posteriors, [n, n_classes]. Deterministic.
  Matrix LogPosteriors(const Matrix &embeddings) const;

  const ProbeClassifierConfig &config() const { return cfg_; }

 private:
  Value Logits(const Value &input) const;

  ProbeClassifierConfig cfg_;
  ParamSet params_;
  bool trained_ = false;
};

}  // namespace cjfe

#endif  // CJFE_PROBE_CLASSIFIER_H_
