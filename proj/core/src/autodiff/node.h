// core/src/autodiff/node.h

// Copyright 2026  The SWCE Workbench Authors

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

#ifndef SWCE_AUTODIFF_NODE_H_
#define SWCE_AUTODIFF_NODE_H_

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "swce/autodiff/tensor.h"

namespace swce::ad::detail {

struct Node {
  Shape shape;
  std::vector<double> value;
  // Empty means "no gradient yet".
  std::vector<double> grad;
  bool requires_grad = false;
  bool leaf = true;
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this node's grad and accumulates into parents that require grad.
  std::function<void(Node&)> backward;

  std::span<double> grad_buffer() {
    if (grad.empty()) grad.assign(value.size(), 0.0);
    return grad;
  }
};

using BackwardFn = std::function<void(Node&)>;

// Wraps an op result. Parents and the backward rule are only recorded when at
// least one parent requires grad; otherwise the result is a plain constant.
Tensor make_result(Shape shape, std::vector<double> value,
                   std::vector<Tensor> parents, BackwardFn backward);

inline Node& node_of(const Tensor& t) { return *t.node(); }

}  // namespace swce::ad::detail

#endif  // SWCE_AUTODIFF_NODE_H_
