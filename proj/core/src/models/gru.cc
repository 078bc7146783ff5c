// core/src/models/gru.cc

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

#include "swce/models/gru.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"

namespace swce::models {

GruCell::GruCell(std::size_t input_dim, std::size_t hidden_dim, Rng& rng)
    : input_dim_(input_dim), hidden_dim_(hidden_dim) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  w_input = uniform_parameter({input_dim, 3 * hidden_dim}, bound, rng);
  u_gates = uniform_parameter({hidden_dim, 2 * hidden_dim}, bound, rng);
  u_candidate = uniform_parameter({hidden_dim, hidden_dim}, bound, rng);
  bias = uniform_parameter({3 * hidden_dim}, bound, rng);
}

Tensor GruCell::project_inputs(const Tensor& x) const {
  if (x.rank() != 2 || x.cols() != input_dim_)
    throw DimensionError(fmt::format("GRU cell expects input width {}, got {}", input_dim_,
                                     ad::shape_string(x.shape())));
  return ad::add_bias(ad::matmul(x, w_input), bias);
}

Tensor GruCell::step(const Tensor& x, const Tensor& h) const {
  return step_projected(project_inputs(x), h);
}

Tensor GruCell::step_projected(const Tensor& input_proj, const Tensor& h) const {
  const std::size_t hd = hidden_dim_;
  if (h.rank() != 2 || h.cols() != hd || input_proj.rows() != h.rows() ||
      input_proj.cols() != 3 * hd)
    throw DimensionError(fmt::format("GRU cell: projection {} / state {} for hidden size {}",
                                     ad::shape_string(input_proj.shape()),
                                     ad::shape_string(h.shape()), hd));
  const Tensor recurrent = ad::matmul(h, u_gates);
  const Tensor z = ad::sigmoid(
      ad::add(ad::slice_cols(input_proj, 0, hd), ad::slice_cols(recurrent, 0, hd)));
  const Tensor r = ad::sigmoid(
      ad::add(ad::slice_cols(input_proj, hd, hd), ad::slice_cols(recurrent, hd, hd)));
  const Tensor candidate = ad::tanh(
      ad::add(ad::slice_cols(input_proj, 2 * hd, hd), ad::matmul(ad::mul(r, h), u_candidate)));
  return ad::add(h, ad::mul(z, ad::sub(candidate, h)));
}

std::vector<Tensor> GruCell::run(std::span<const Tensor> steps) const {
  if (steps.empty()) throw ContractError("GRU: empty sequence");
  const std::size_t b = steps[0].rows();
  const Tensor projected = project_inputs(ad::concat_rows(steps));
  Tensor h = Tensor::zeros({b, hidden_dim_});
  std::vector<Tensor> states;
  states.reserve(steps.size());
  for (std::size_t t = 0; t < steps.size(); ++t) {
    h = step_projected(ad::slice_rows(projected, t * b, b), h);
    states.push_back(h);
  }
  return states;
}

NamedTensors GruCell::parameters(const std::string& prefix) const {
  return {{prefix + ".w_input", w_input},
          {prefix + ".u_gates", u_gates},
          {prefix + ".u_candidate", u_candidate},
          {prefix + ".bias", bias}};
}

BiGruClassifier::BiGruClassifier(const BiGruConfig& config, Rng& rng) : config_(config) {
  if (config.num_layers == 0 || config.hidden_dim == 0 || config.input_dim == 0)
    throw ContractError("BiGRU: dimensions and layer count must be positive");
  std::size_t in = config.input_dim;
  for (std::size_t l = 0; l < config.num_layers; ++l) {
    forward_cells_.emplace_back(in, config.hidden_dim, rng);
    if (config.tied_directions)
      backward_cells_.push_back(forward_cells_.back());
    else
      backward_cells_.emplace_back(in, config.hidden_dim, rng);
    in = 2 * config.hidden_dim;
  }
  head_ = Linear(2 * config.hidden_dim, config.num_classes, rng);
}

Tensor BiGruClassifier::encode_equal_length(std::span<const Tensor> batch) const {
  const std::size_t b = batch.size();
  const std::size_t steps = batch[0].rows();
  // Time-major [B, D] slices.
  std::vector<Tensor> inputs;
  inputs.reserve(steps);
  {
    const Tensor stacked = ad::concat_rows(batch);  // [B*T, D], sample-major
    for (std::size_t t = 0; t < steps; ++t) {
      std::vector<std::size_t> rows(b);
      for (std::size_t i = 0; i < b; ++i) rows[i] = i * steps + t;
      inputs.push_back(b == 1 ? ad::slice_rows(stacked, t, 1) : ad::gather_rows(stacked, rows));
    }
  }
  Tensor last_forward, first_backward;
  for (std::size_t l = 0; l < config_.num_layers; ++l) {
    const std::vector<Tensor> fwd = forward_cells_[l].run(inputs);
    std::vector<Tensor> reversed(inputs.rbegin(), inputs.rend());
    std::vector<Tensor> bwd = backward_cells_[l].run(reversed);
    std::reverse(bwd.begin(), bwd.end());
    last_forward = fwd.back();
    first_backward = bwd.front();
    if (l + 1 < config_.num_layers) {
      for (std::size_t t = 0; t < steps; ++t) {
        const Tensor pair[] = {fwd[t], bwd[t]};
        inputs[t] = ad::concat_cols(pair);
      }
    }
  }
  const Tensor pair[] = {last_forward, first_backward};
  return ad::concat_cols(pair);
}

Tensor BiGruClassifier::encode(std::span<const Tensor> batch) const {
  if (batch.empty()) throw ContractError("BiGRU: empty batch");
  for (const Tensor& s : batch) {
    if (s.rank() != 2 || s.cols() != config_.input_dim)
      throw DimensionError(fmt::format("BiGRU expects [T, {}] sequences, got {}",
                                       config_.input_dim, ad::shape_string(s.shape())));
  }
  bool equal = true;
  for (const Tensor& s : batch) equal = equal && s.rows() == batch[0].rows();
  if (equal) return encode_equal_length(batch);
  std::vector<Tensor> rows;
  rows.reserve(batch.size());
  for (const Tensor& s : batch) rows.push_back(encode_equal_length(std::span(&s, 1)));
  return ad::concat_rows(rows);
}

Tensor BiGruClassifier::forward(std::span<const Tensor> batch) const {
  return head_(encode(batch));
}

NamedTensors BiGruClassifier::parameters() const {
  NamedTensors out;
  for (std::size_t l = 0; l < config_.num_layers; ++l) {
    append(out, forward_cells_[l].parameters(fmt::format("gru.l{}.fwd", l)));
    if (!config_.tied_directions)
      append(out, backward_cells_[l].parameters(fmt::format("gru.l{}.bwd", l)));
  }
  append(out, head_.parameters("gru.head"));
  return out;
}

}  // namespace swce::models
