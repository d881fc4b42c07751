// gradcore/value.h

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

#ifndef CJFE_GRADCORE_VALUE_H_
#define CJFE_GRADCORE_VALUE_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gradcore/shape.h"

namespace cjfe {

namespace internal {
struct Node {
  std::vector<double> data;
  std::vector<double> grad;
  Shape shape;
  const char *op = "leaf";
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this node's grad and accumulates (+=) into the parents' grads.
  // Stored on the node; never captures the node itself (no ref cycles).
  std::function<void(Node &self)> backprop;
};
}  // namespace internal

// Handle to one autodiff graph node: a numeric array, its shape, a same-shape
// gradient slot, and the backward rule that produced it. Copying a Value
// copies the handle, not the array.
class Value {
 public:
  Value() = default;

  // Leaf without history (parameters, inputs). Data zero-initialized unless
  // given.
  static Value Leaf(const Shape &shape);
  static Value Leaf(const Shape &shape, std::vector<double> data);

  // Result node; used by the op library.
  static Value Result(const char *op, const Shape &shape,
                      std::vector<double> data, std::vector<Value> parents,
                      std::function<void(internal::Node &)> backprop);

  bool Defined() const { return node_ != nullptr; }
  const Shape &shape() const { return node_->shape; }
  int64_t NumElements() const { return node_->shape.NumElements(); }
  const char *op() const { return node_->op; }
  bool IsLeaf() const { return node_->parents.empty(); }

  std::span<const double> Data() const {
    return {node_->data.data(), node_->data.size()};
  }
  std::span<double> MutableData() {
    return {node_->data.data(), node_->data.size()};
  }
  std::span<const double> Grad() const {
    return {node_->grad.data(), node_->grad.size()};
  }
  std::span<double> MutableGrad() {
    return {node_->grad.data(), node_->grad.size()};
  }

  // Requires a single-element value.
  double Scalar() const;

  void ZeroGrad();

  internal::Node *node() const { return node_.get(); }
  const std::shared_ptr<internal::Node> &node_ptr() const { return node_; }

 private:
  explicit Value(std::shared_ptr<internal::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<internal::Node> node_;
};

// Reverse-mode sweep from a scalar loss. Gradients of intermediate nodes are
// cleared at the start of each sweep; leaf gradients accumulate across sweeps
// until explicitly zeroed. Within one build the traversal order is fixed, so
// repeated sweeps over the same graph are bitwise deterministic.
void Backward(const Value &loss);

}  // namespace cjfe

#endif  // CJFE_GRADCORE_VALUE_H_
