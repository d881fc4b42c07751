// gradcore/gradcheck.cc

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

#include "gradcore/gradcheck.h"

#include <cmath>
#include <map>
#include <sstream>

#include "util/common.h"

namespace cjfe {

std::string GradCheckReport::ToString() const {
  std::ostringstream os;
  for (const auto &e : entries) {
    os << (e.pass ? "ok   " : "FAIL ") << e.param << "  max_err=" << e.max_err
       << "\n";
  }
  os << (passed ? "PASSED" : "FAILED") << " (tolerance " << tolerance
     << ", max_err " << max_err << ")\n";
  return os.str();
}

GradCheckReport GradCheck(ParamSet &params, const GraphBuilder &builder,
                          double tolerance, double step) {
  if (!(step > 0.0)) throw ContractError("grad_check: step must be > 0");

  // Analytic pass.
  params.ZeroGrads();
  Value loss = builder(params);
  Backward(loss);
  std::map<std::string, std::vector<double>> analytic;
  for (auto &[name, v] : params) {
    analytic[name].assign(v.Grad().begin(), v.Grad().end());
  }

  GradCheckReport report;
  report.tolerance = tolerance;
  for (auto &[name, v] : params) {
    GradCheckReport::Entry entry;
    entry.param = name;
    std::span<double> data = v.MutableData();
    const std::vector<double> &a = analytic[name];
    for (size_t i = 0; i < data.size(); ++i) {
      const double saved = data[i];
      data[i] = saved + step;
      double up = builder(params).Scalar();
      data[i] = saved - step;
      double down = builder(params).Scalar();
      data[i] = saved;
      double numeric = (up - down) / (2.0 * step);
      double err;
      if (std::abs(a[i]) < 1e-6) {
        err = std::abs(a[i] - numeric);
      } else {
        err = std::abs(a[i] - numeric) /
              std::max(std::abs(a[i]), std::abs(numeric));
      }
      entry.max_err = std::max(entry.max_err, err);
    }
    entry.pass = entry.max_err < tolerance;
    report.max_err = std::max(report.max_err, entry.max_err);
    report.passed = report.passed && entry.pass;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace cjfe
