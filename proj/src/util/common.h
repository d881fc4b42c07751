// util/common.h

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

#ifndef CJFE_UTIL_COMMON_H_
#define CJFE_UTIL_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cjfe {

// Base error type. `category()` is the single-word machine-parseable class
// that the CLI reports on failure.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string &message)
      : std::runtime_error(message), category_(std::move(category)) {}
  const std::string &category() const { return category_; }

 private:
  std::string category_;
};

// Shape or axis disagreement between arrays.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string &m) : Error("dimension", m) {}
};

// An API was used outside its contract (e.g. backward on a non-scalar).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string &m) : Error("contract", m) {}
};

// A file did not match its expected byte-level format.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string &m) : Error("format", m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &m) : Error("io", m) {}
};

// Well-formed input whose content is unusable (empty corpus, bad labels...).
class DataError : public Error {
 public:
  explicit DataError(const std::string &m) : Error("data", m) {}
};

// Non-finite values where finite ones are required.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string &m) : Error("numeric", m) {}
};

}  // namespace cjfe

#endif  // CJFE_UTIL_COMMON_H_
