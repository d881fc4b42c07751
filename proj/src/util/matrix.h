// util/matrix.h

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

#ifndef CJFE_UTIL_MATRIX_H_
#define CJFE_UTIL_MATRIX_H_

#include <cstdint>
#include <span>
#include <vector>

#include "util/common.h"

namespace cjfe {

// Plain row-major matrix of doubles. Deliberately dumb: the autodiff engine
// has its own tensor type; this is for features, windows and embeddings.
struct Matrix {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int64_t r, int64_t c) : rows(r), cols(c), data(r * c, 0.0) {
    if (r < 0 || c < 0) throw DimensionError("Matrix: negative dimension");
  }

  double &At(int64_t r, int64_t c) { return data[r * cols + c]; }
  double At(int64_t r, int64_t c) const { return data[r * cols + c]; }

  std::span<double> Row(int64_t r) {
    return std::span<double>(data.data() + r * cols, cols);
  }
  std::span<const double> Row(int64_t r) const {
    return std::span<const double>(data.data() + r * cols, cols);
  }

  bool SameShape(const Matrix &o) const {
    return rows == o.rows && cols == o.cols;
  }
};

}  // namespace cjfe

#endif  // CJFE_UTIL_MATRIX_H_
