// util/rng.h

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

#ifndef CJFE_UTIL_RNG_H_
#define CJFE_UTIL_RNG_H_

#include <cstdint>
#include <vector>

namespace cjfe {

// Self-contained deterministic generator (splitmix64 core). The standard
// library distributions are implementation-defined, so everything that feeds
// reproducible outputs (init, shuffling, noise, corpus synthesis) goes
// through this class instead.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextU64();

  // Uniform in [0, 1) with 53 bits of mantissa.
  double Uniform();

  // Uniform in [lo, hi].
  double Uniform(double lo, double hi);

  // Unbiased integer in [0, n); n must be > 0.
  uint64_t UniformInt(uint64_t n);

  // Standard normal via Box-Muller (second draw cached).
  double Normal();
  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }

  void FillNormal(std::vector<double> *out, double stddev = 1.0);

  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::vector<T> *v) {
    if (v->empty()) return;
    for (uint64_t i = v->size() - 1; i > 0; --i) {
      uint64_t j = UniformInt(i + 1);
      std::swap((*v)[i], (*v)[j]);
    }
  }

  // Independent stream for (seed, tag); used for per-utterance generation and
  // to keep init / shuffling / noise decoupled.
  static Rng Derive(uint64_t seed, uint64_t tag);

 private:
  uint64_t state_;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace cjfe

#endif  // CJFE_UTIL_RNG_H_
