// core/include/swce/models/gru.h

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

#ifndef SWCE_MODELS_GRU_H_
#define SWCE_MODELS_GRU_H_

#include <memory>
#include <span>
#include <vector>

#include "swce/models/classifier.h"
#include "swce/models/layers.h"

namespace swce::models {

// Standard GRU cell:
//   z  = sigmoid(x Wz + h Uz + bz)
//   r  = sigmoid(x Wr + h Ur + br)
//   h~ = tanh(x Wh + (r * h) Uh + bh)
//   h' = (1 - z) * h + z * h~
// Input weights are stored fused as W [D, 3H] (z | r | h~), recurrent
// gate weights as U [H, 2H] (z | r).
class GruCell {
 public:
  GruCell() = default;
  GruCell(std::size_t input_dim, std::size_t hidden_dim, Rng& rng);

  // x [B, D], h [B, H] -> h' [B, H].
  Tensor step(const Tensor& x, const Tensor& h) const;
  // Same as step() with x W + b already computed ([B, 3H]).
  Tensor step_projected(const Tensor& input_proj, const Tensor& h) const;
  // x [M, D] -> x W + b [M, 3H].
  Tensor project_inputs(const Tensor& x) const;

  // Runs the cell over time-major steps ([B, D] each) from h = 0. The input
  // projection of all steps is one matmul. Returns the state after each step.
  std::vector<Tensor> run(std::span<const Tensor> steps) const;

  std::size_t input_dim() const { return input_dim_; }
  std::size_t hidden_dim() const { return hidden_dim_; }
  NamedTensors parameters(const std::string& prefix) const;

  Tensor w_input;
  Tensor u_gates;
  Tensor u_candidate;
  Tensor bias;

 private:
  std::size_t input_dim_ = 0;
  std::size_t hidden_dim_ = 0;
};

struct BiGruConfig {
  std::size_t input_dim = 38;
  std::size_t hidden_dim = 64;
  std::size_t num_layers = 2;
  std::size_t num_classes = kNumClasses;
  // Share one cell between the two directions of every layer.
  bool tied_directions = false;
};

// Stacked bidirectional GRU. Each layer runs a forward and a backward cell
// independently and feeds [fwd_t | bwd_t] to the next layer. The clip
// representation is [last forward state | last backward state] of the top
// layer, followed by a linear head.
class BiGruClassifier : public SequenceClassifier {
 public:
  BiGruClassifier(const BiGruConfig& config, Rng& rng);

  Tensor forward(std::span<const Tensor> batch) const override;
  // [B, 2H] representation before the head.
  Tensor encode(std::span<const Tensor> batch) const;

  NamedTensors parameters() const override;
  std::size_t input_dim() const override { return config_.input_dim; }
  std::string name() const override { return "GRU"; }
  const BiGruConfig& config() const { return config_; }

 private:
  Tensor encode_equal_length(std::span<const Tensor> batch) const;

  BiGruConfig config_;
  std::vector<GruCell> forward_cells_;
  std::vector<GruCell> backward_cells_;
  Linear head_;
};

}  // namespace swce::models

#endif  // SWCE_MODELS_GRU_H_
