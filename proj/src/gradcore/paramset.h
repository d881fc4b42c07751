// gradcore/paramset.h

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

#ifndef CJFE_GRADCORE_PARAMSET_H_
#define CJFE_GRADCORE_PARAMSET_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gradcore/value.h"

namespace cjfe {

// Named trainable leaves. std::map keys give the deterministic lexicographic
// iteration order that the optimizer and the checkpoint directory rely on.
class ParamSet {
 public:
  Value &Create(const std::string &name, const Shape &shape);
  Value &Get(const std::string &name);
  const Value &Get(const std::string &name) const;
  bool Has(const std::string &name) const { return params_.count(name) > 0; }

  int64_t TotalElements() const;
  size_t size() const { return params_.size(); }
  void ZeroGrads();

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::map<std::string, Value> params_;
};

// Non-trainable persistent arrays (batch-norm running statistics). Same
// naming/ordering discipline as ParamSet, but the arrays sit outside the
// autodiff graph.
class StateSet {
 public:
  std::shared_ptr<std::vector<double>> Create(const std::string &name,
                                              int64_t size, double fill);
  std::shared_ptr<std::vector<double>> Get(const std::string &name) const;
  bool Has(const std::string &name) const { return arrays_.count(name) > 0; }

  auto begin() const { return arrays_.begin(); }
  auto end() const { return arrays_.end(); }

 private:
  std::map<std::string, std::shared_ptr<std::vector<double>>> arrays_;
};

}  // namespace cjfe

#endif  // CJFE_GRADCORE_PARAMSET_H_
