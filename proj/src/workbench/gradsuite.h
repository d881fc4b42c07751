// workbench/gradsuite.h

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

#ifndef CJFE_WORKBENCH_GRADSUITE_H_
#define CJFE_WORKBENCH_GRADSUITE_H_

#include <string>
#include <vector>

#include "gradcore/gradcheck.h"

namespace cjfe {

struct GradSuiteResult {
  std::string name;
  GradCheckReport report;
};

// Finite-difference verification of every operator plus the three full loss
// graphs (VAE, CJFS, CJFA) at tiny dimensions (target 6, neighbours 3, K=4,
// channels [2,3,4]). Fixtures are seeded and keep activations away from the
// leaky-ReLU kink so central differences at h=1e-3 are trustworthy.
std::vector<GradSuiteResult> RunStandardGradSuite(double tolerance);

bool AllPassed(const std::vector<GradSuiteResult> &results);

}  // namespace cjfe

#endif  // CJFE_WORKBENCH_GRADSUITE_H_
