// core/include/swce/autodiff/tensor.h

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

#ifndef SWCE_AUTODIFF_TENSOR_H_
#define SWCE_AUTODIFF_TENSOR_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace swce::ad {

// Dimension sizes, outermost first. An empty shape is a scalar.
using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);
std::string shape_string(const Shape& shape);

namespace detail {
struct Node;
}

// Handle to a node of the dynamic gradient tape.
//
// A Tensor is either a leaf (constant or parameter) or the output of a
// recorded op. Values are 64-bit, row-major, and never change once the
// tensor takes part in a graph; the only exception is the optimizer (and the
// checkpoint loader) writing parameters between forward passes.
//
// Copies are shallow: two Tensor objects may refer to the same node.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::shared_ptr<detail::Node> node);

  // Leaf that never accumulates gradient.
  static Tensor constant(Shape shape, std::vector<double> values);
  // Leaf with requires_grad set.
  static Tensor parameter(Shape shape, std::vector<double> values);
  static Tensor zeros(Shape shape);
  static Tensor scalar(double value);

  bool defined() const { return node_ != nullptr; }

  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t size() const;
  // 2-D accessors; throw DimensionError on other ranks.
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> values() const;
  double item() const;
  double at(std::size_t flat_index) const;
  double at(std::size_t row, std::size_t col) const;

  bool requires_grad() const;
  bool is_leaf() const;
  bool has_grad() const;
  std::span<const double> grad() const;
  void zero_grad();

  // Writable view of a leaf's values. Throws on op outputs.
  std::span<double> mutable_values();

  // Constant copy of the current values, cut from the tape.
  Tensor detach() const;

  // Reverse sweep from this scalar. Leaf gradients accumulate across calls
  // until zero_grad(); intermediate gradients are rebuilt on every call.
  void backward() const;

  const std::shared_ptr<detail::Node>& node() const { return node_; }

 private:
  std::shared_ptr<detail::Node> node_;
};

void zero_grads(std::span<Tensor> tensors);

}  // namespace swce::ad

#endif  // SWCE_AUTODIFF_TENSOR_H_
