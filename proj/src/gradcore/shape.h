// gradcore/shape.h

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

#ifndef CJFE_GRADCORE_SHAPE_H_
#define CJFE_GRADCORE_SHAPE_H_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace cjfe {

// Tensor extents, ordered (batch, time, frequency/feature, channels) where
// applicable. Every dim is >= 1.
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<int64_t> dims);
  explicit Shape(std::vector<int64_t> dims);

  int64_t NumAxes() const { return static_cast<int64_t>(dims_.size()); }
  int64_t Dim(int64_t axis) const;
  int64_t NumElements() const;

  const std::vector<int64_t> &dims() const { return dims_; }

  bool operator==(const Shape &o) const { return dims_ == o.dims_; }
  bool operator!=(const Shape &o) const { return !(*this == o); }

  // "[2, 3, 80, 1]"
  std::string ToString() const;

 private:
  void Validate() const;
  std::vector<int64_t> dims_;
};

}  // namespace cjfe

#endif  // CJFE_GRADCORE_SHAPE_H_
