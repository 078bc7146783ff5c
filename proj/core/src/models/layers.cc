// core/src/models/layers.cc

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

#include "swce/models/layers.h"

#include <cmath>

#include "swce/autodiff/ops.h"

namespace swce::models {

Tensor uniform_parameter(Shape shape, double bound, Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<double> v(ad::shape_size(shape));
  for (double& x : v) x = dist(rng);
  return Tensor::parameter(std::move(shape), std::move(v));
}

Tensor normal_parameter(Shape shape, double stddev, Rng& rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  std::vector<double> v(ad::shape_size(shape));
  for (double& x : v) x = dist(rng);
  return Tensor::parameter(std::move(shape), std::move(v));
}

Tensor filled_parameter(Shape shape, double value) {
  const std::size_t n = ad::shape_size(shape);
  return Tensor::parameter(std::move(shape), std::vector<double>(n, value));
}

Linear::Linear(std::size_t in, std::size_t out, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  weight = uniform_parameter({in, out}, bound, rng);
  bias = uniform_parameter({out}, bound, rng);
}

Tensor Linear::operator()(const Tensor& x) const {
  return ad::add_bias(ad::matmul(x, weight), bias);
}

NamedTensors Linear::parameters(const std::string& prefix) const {
  return {{prefix + ".weight", weight}, {prefix + ".bias", bias}};
}

Conv1dLayer::Conv1dLayer(std::size_t in_channels, std::size_t out_channels,
                         std::size_t kernel_size, std::size_t stride_, std::size_t padding_,
                         Rng& rng)
    : kernel(kernel_size), stride(stride_), padding(padding_) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in_channels * kernel_size));
  weight = uniform_parameter({kernel_size * in_channels, out_channels}, bound, rng);
  bias = uniform_parameter({out_channels}, bound, rng);
}

Tensor Conv1dLayer::operator()(const Tensor& x) const {
  return ad::conv1d(x, weight, bias, kernel, stride, padding);
}

std::size_t Conv1dLayer::output_length(std::size_t length) const {
  return ad::conv1d_output_length(length, kernel, stride, padding);
}

NamedTensors Conv1dLayer::parameters(const std::string& prefix) const {
  return {{prefix + ".weight", weight}, {prefix + ".bias", bias}};
}

LayerNorm::LayerNorm(std::size_t dim)
    : gamma(filled_parameter({dim}, 1.0)), beta(filled_parameter({dim}, 0.0)) {}

Tensor LayerNorm::operator()(const Tensor& x) const { return ad::layer_norm(x, gamma, beta); }

NamedTensors LayerNorm::parameters(const std::string& prefix) const {
  return {{prefix + ".gamma", gamma}, {prefix + ".beta", beta}};
}

void append(NamedTensors& into, const NamedTensors& more) {
  into.insert(into.end(), more.begin(), more.end());
}

}  // namespace swce::models
