// gradcore/value.cc

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

#include "gradcore/value.h"

#include <algorithm>
#include <unordered_set>

#include "util/common.h"

namespace cjfe {

Value Value::Leaf(const Shape &shape) {
  return Leaf(shape, std::vector<double>(shape.NumElements(), 0.0));
}

Value Value::Leaf(const Shape &shape, std::vector<double> data) {
  if (static_cast<int64_t>(data.size()) != shape.NumElements()) {
    throw DimensionError("Value::Leaf: data length " +
                         std::to_string(data.size()) + " != element count of " +
                         shape.ToString());
  }
  auto node = std::make_shared<internal::Node>();
  node->shape = shape;
  node->data = std::move(data);
  node->grad.assign(node->data.size(), 0.0);
  return Value(std::move(node));
}

Value Value::Result(const char *op, const Shape &shape,
                    std::vector<double> data, std::vector<Value> parents,
                    std::function<void(internal::Node &)> backprop) {
  if (static_cast<int64_t>(data.size()) != shape.NumElements()) {
    throw DimensionError(std::string("Value::Result(") + op +
                         "): data length does not match shape " +
                         shape.ToString());
  }
  auto node = std::make_shared<internal::Node>();
  node->shape = shape;
  node->data = std::move(data);
  node->grad.assign(node->data.size(), 0.0);
  node->op = op;
  node->parents.reserve(parents.size());
  for (const Value &p : parents) node->parents.push_back(p.node_ptr());
  node->backprop = std::move(backprop);
  return Value(std::move(node));
}

double Value::Scalar() const {
  if (NumElements() != 1) {
    throw ContractError(std::string("Value::Scalar: node '") + op() +
                        "' has shape " + shape().ToString());
  }
  return node_->data[0];
}

void Value::ZeroGrad() {
  std::fill(node_->grad.begin(), node_->grad.end(), 0.0);
}

void Backward(const Value &loss) {
  if (!loss.Defined()) throw ContractError("Backward: undefined value");
  if (loss.NumElements() != 1) {
    throw ContractError("Backward: loss must be scalar, got shape " +
                        loss.shape().ToString());
  }

  // Iterative DFS post-order over parent edges: leaves first, loss last.
  using internal::Node;
  std::vector<Node *> order;
  std::unordered_set<const Node *> done;
  struct Frame {
    Node *node;
    size_t next_parent;
  };
  std::vector<Frame> stack;
  stack.push_back({loss.node(), 0});
  while (!stack.empty()) {
    Frame &f = stack.back();
    if (f.next_parent == 0 && done.count(f.node)) {
      stack.pop_back();
      continue;
    }
    if (f.next_parent < f.node->parents.size()) {
      Node *p = f.node->parents[f.next_parent++].get();
      if (!done.count(p)) stack.push_back({p, 0});
    } else {
      done.insert(f.node);
      order.push_back(f.node);
      stack.pop_back();
    }
  }

  // Fresh sweep: intermediate grads restart at zero, leaf grads accumulate.
  for (Node *n : order) {
    if (!n->parents.empty()) std::fill(n->grad.begin(), n->grad.end(), 0.0);
  }
  loss.node()->grad[0] += 1.0;

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node *n = *it;
    if (n->backprop) n->backprop(*n);
  }
}

}  // namespace cjfe
