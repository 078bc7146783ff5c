// core/include/swce/models/layers.h

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

#ifndef SWCE_MODELS_LAYERS_H_
#define SWCE_MODELS_LAYERS_H_

#include <cstddef>
#include <random>
#include <string>

#include "swce/autodiff/parameters.h"
#include "swce/autodiff/tensor.h"

namespace swce::models {

using ad::NamedTensors;
using ad::Shape;
using ad::Tensor;
using Rng = std::mt19937_64;

// Trainable leaf with entries drawn from U(-bound, bound).
Tensor uniform_parameter(Shape shape, double bound, Rng& rng);
Tensor normal_parameter(Shape shape, double stddev, Rng& rng);
Tensor filled_parameter(Shape shape, double value);

// y = x W + b with W [in, out].
struct Linear {
  Linear() = default;
  Linear(std::size_t in, std::size_t out, Rng& rng);
  Tensor operator()(const Tensor& x) const;
  NamedTensors parameters(const std::string& prefix) const;

  Tensor weight;
  Tensor bias;
};

struct Conv1dLayer {
  Conv1dLayer() = default;
  Conv1dLayer(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
              std::size_t stride, std::size_t padding, Rng& rng);
  Tensor operator()(const Tensor& x) const;
  std::size_t output_length(std::size_t length) const;
  NamedTensors parameters(const std::string& prefix) const;

  Tensor weight;
  Tensor bias;
  std::size_t kernel = 1;
  std::size_t stride = 1;
  std::size_t padding = 0;
};

struct LayerNorm {
  LayerNorm() = default;
  explicit LayerNorm(std::size_t dim);
  Tensor operator()(const Tensor& x) const;
  NamedTensors parameters(const std::string& prefix) const;

  Tensor gamma;
  Tensor beta;
};

// Appends `more` to `into`.
void append(NamedTensors& into, const NamedTensors& more);

}  // namespace swce::models

#endif  // SWCE_MODELS_LAYERS_H_
