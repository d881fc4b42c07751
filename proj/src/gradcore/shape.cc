// gradcore/shape.cc

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

#include "gradcore/shape.h"

#include <sstream>

#include "util/common.h"

namespace cjfe {

Shape::Shape(std::initializer_list<int64_t> dims) : dims_(dims) { Validate(); }

Shape::Shape(std::vector<int64_t> dims) : dims_(std::move(dims)) { Validate(); }

void Shape::Validate() const {
  for (int64_t d : dims_) {
    if (d < 1) throw DimensionError("Shape: dims must be >= 1, got " + ToString());
  }
}

int64_t Shape::Dim(int64_t axis) const {
  if (axis < 0 || axis >= NumAxes()) {
    throw DimensionError("Shape: axis " + std::to_string(axis) +
                         " out of range for " + ToString());
  }
  return dims_[axis];
}

int64_t Shape::NumElements() const {
  int64_t n = 1;
  for (int64_t d : dims_) n *= d;
  return n;
}

std::string Shape::ToString() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (i) os << ", ";
    os << dims_[i];
  }
  os << "]";
  return os.str();
}

}  // namespace cjfe
