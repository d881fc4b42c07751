// gradcore/gradcheck.h

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

#ifndef CJFE_GRADCORE_GRADCHECK_H_
#define CJFE_GRADCORE_GRADCHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "gradcore/paramset.h"

namespace cjfe {

// Builds a scalar loss from the parameter set. Called repeatedly with
// perturbed parameter data; everything else it consumes (inputs, targets,
// noise) must be fixed across calls.
using GraphBuilder = std::function<Value(ParamSet &params)>;

struct GradCheckReport {
  struct Entry {
    std::string param;
    double max_err = 0.0;  // relative, or absolute where |analytic| < 1e-6
    bool pass = true;
  };
  std::vector<Entry> entries;
  double tolerance = 0.0;
  double max_err = 0.0;
  bool passed = true;

  std::string ToString() const;
};

// Compares the engine's reverse-mode gradients against central finite
// differences, parameter element by parameter element. Elements whose
// analytic gradient is below 1e-6 in magnitude are compared absolutely,
// everything else relatively (|a - n| / max(|a|, |n|)).
GradCheckReport GradCheck(ParamSet &params, const GraphBuilder &builder,
                          double tolerance, double step = 1e-3);

}  // namespace cjfe

#endif  // CJFE_GRADCORE_GRADCHECK_H_
