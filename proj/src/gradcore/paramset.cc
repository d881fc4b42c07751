// gradcore/paramset.cc

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

#include "gradcore/paramset.h"

#include "util/common.h"

namespace cjfe {

Value &ParamSet::Create(const std::string &name, const Shape &shape) {
  auto [it, inserted] = params_.emplace(name, Value::Leaf(shape));
  if (!inserted) throw ContractError("ParamSet: duplicate parameter '" + name + "'");
  return it->second;
}

Value &ParamSet::Get(const std::string &name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw ContractError("ParamSet: unknown parameter '" + name + "'");
  return it->second;
}

const Value &ParamSet::Get(const std::string &name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw ContractError("ParamSet: unknown parameter '" + name + "'");
  return it->second;
}

int64_t ParamSet::TotalElements() const {
  int64_t n = 0;
  for (const auto &[name, v] : params_) n += v.NumElements();
  return n;
}

void ParamSet::ZeroGrads() {
  for (auto &[name, v] : params_) v.ZeroGrad();
}

std::shared_ptr<std::vector<double>> StateSet::Create(const std::string &name,
                                                      int64_t size,
                                                      double fill) {
  auto arr = std::make_shared<std::vector<double>>(size, fill);
  auto [it, inserted] = arrays_.emplace(name, arr);
  if (!inserted) throw ContractError("StateSet: duplicate array '" + name + "'");
  return it->second;
}

std::shared_ptr<std::vector<double>> StateSet::Get(const std::string &name) const {
  auto it = arrays_.find(name);
  if (it == arrays_.end()) throw ContractError("StateSet: unknown array '" + name + "'");
  return it->second;
}

}  // namespace cjfe
