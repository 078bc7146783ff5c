// core/src/autodiff/tensor.cc

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

#include "swce/autodiff/tensor.h"

#include <fmt/format.h>

#include <unordered_set>
#include <utility>

#include "node.h"
#include "swce/common/errors.h"

namespace swce::ad {

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_string(const Shape& shape) {
  return fmt::format("[{}]", fmt::join(shape, "x"));
}

namespace {

std::shared_ptr<detail::Node> make_leaf(Shape shape, std::vector<double> values,
                                        bool requires_grad) {
  for (std::size_t d : shape)
    if (d == 0)
      throw DimensionError("tensor dimensions must be positive, got " +
                           shape_string(shape));
  if (shape_size(shape) != values.size())
    throw DimensionError(fmt::format("shape {} holds {} values, got {}",
                                     shape_string(shape), shape_size(shape),
                                     values.size()));
  auto node = std::make_shared<detail::Node>();
  node->shape = std::move(shape);
  node->value = std::move(values);
  node->requires_grad = requires_grad;
  node->leaf = true;
  return node;
}

const detail::Node& checked(const std::shared_ptr<detail::Node>& node) {
  if (!node) throw ContractError("use of an undefined tensor");
  return *node;
}

}  // namespace

namespace detail {

Tensor make_result(Shape shape, std::vector<double> value,
                   std::vector<Tensor> parents, BackwardFn backward) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->value = std::move(value);
  node->leaf = false;
  bool any = false;
  for (const Tensor& p : parents) any = any || p.requires_grad();
  if (any) {
    node->requires_grad = true;
    node->parents.reserve(parents.size());
    for (const Tensor& p : parents) node->parents.push_back(p.node());
    node->backward = std::move(backward);
  }
  return Tensor(std::move(node));
}

}  // namespace detail

Tensor::Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

Tensor Tensor::constant(Shape shape, std::vector<double> values) {
  return Tensor(make_leaf(std::move(shape), std::move(values), false));
}

Tensor Tensor::parameter(Shape shape, std::vector<double> values) {
  return Tensor(make_leaf(std::move(shape), std::move(values), true));
}

Tensor Tensor::zeros(Shape shape) {
  const std::size_t n = shape_size(shape);
  return constant(std::move(shape), std::vector<double>(n, 0.0));
}

Tensor Tensor::scalar(double value) { return constant({}, {value}); }

const Shape& Tensor::shape() const { return checked(node_).shape; }

std::size_t Tensor::dim(std::size_t axis) const {
  const Shape& s = shape();
  if (axis >= s.size())
    throw DimensionError(fmt::format("axis {} out of range for shape {}", axis,
                                     shape_string(s)));
  return s[axis];
}

std::size_t Tensor::size() const { return checked(node_).value.size(); }

std::size_t Tensor::rows() const {
  if (rank() != 2)
    throw DimensionError("rows() needs a matrix, got " + shape_string(shape()));
  return shape()[0];
}

std::size_t Tensor::cols() const {
  if (rank() != 2)
    throw DimensionError("cols() needs a matrix, got " + shape_string(shape()));
  return shape()[1];
}

std::span<const double> Tensor::values() const { return checked(node_).value; }

double Tensor::item() const {
  if (size() != 1)
    throw ContractError("item() on non-scalar tensor " + shape_string(shape()));
  return node_->value[0];
}

double Tensor::at(std::size_t flat_index) const {
  return checked(node_).value.at(flat_index);
}

double Tensor::at(std::size_t row, std::size_t col) const {
  return node_->value.at(row * cols() + col);
}

bool Tensor::requires_grad() const { return checked(node_).requires_grad; }

bool Tensor::is_leaf() const { return checked(node_).leaf; }

bool Tensor::has_grad() const { return !checked(node_).grad.empty(); }

std::span<const double> Tensor::grad() const {
  if (!has_grad()) throw ContractError("tensor has no gradient");
  return node_->grad;
}

void Tensor::zero_grad() {
  checked(node_);
  node_->grad.clear();
  node_->grad.shrink_to_fit();
}

std::span<double> Tensor::mutable_values() {
  if (!checked(node_).leaf)
    throw ContractError("only leaf tensors can be written in place");
  return node_->value;
}

Tensor Tensor::detach() const {
  return constant(shape(), std::vector<double>(values().begin(), values().end()));
}

void Tensor::backward() const {
  const detail::Node& root = checked(node_);
  if (root.value.size() != 1)
    throw ContractError("backward() needs a scalar loss, got shape " +
                        shape_string(root.shape));
  if (!root.requires_grad) return;

  // Iterative post-order DFS gives a topological order (parents first).
  std::vector<detail::Node*> order;
  std::unordered_set<detail::Node*> seen;
  std::vector<std::pair<detail::Node*, std::size_t>> stack;
  stack.emplace_back(node_.get(), 0);
  seen.insert(node_.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      detail::Node* p = node->parents[next++].get();
      if (p->requires_grad && seen.insert(p).second) stack.emplace_back(p, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  for (detail::Node* n : order)
    if (!n->leaf) n->grad.clear();
  node_->grad_buffer()[0] += 1.0;

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    detail::Node* n = *it;
    if (n->leaf || n->grad.empty()) continue;
    n->backward(*n);
  }
  for (detail::Node* n : order)
    if (!n->leaf) {
      n->grad.clear();
      n->grad.shrink_to_fit();
    }
}

void zero_grads(std::span<Tensor> tensors) {
  for (Tensor& t : tensors) t.zero_grad();
}

}  // namespace swce::ad
