// core/src/models/acnn.cc

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

#include "swce/models/acnn.h"

#include <fmt/format.h>

#include <cmath>

#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"

namespace swce::models {

AcnnClassifier::AcnnClassifier(const AcnnConfig& config, Rng& rng) : config_(config) {
  if (config.num_conv == 0 || config.channels == 0 || config.kernel == 0 || config.stride == 0)
    throw ContractError("ACNN: conv geometry must be positive");
  std::size_t in = config.input_dim;
  for (std::size_t i = 0; i < config.num_conv; ++i) {
    convs_.emplace_back(in, config.channels, config.kernel, config.stride, config.padding, rng);
    in = config.channels;
  }
  query_ = normal_parameter({config.channels, 1}, 1.0 / std::sqrt(double(config.channels)), rng);
  hidden_ = Linear(config.channels, config.hidden_dim, rng);
  head_ = Linear(config.hidden_dim, config.num_classes, rng);
}

std::size_t AcnnClassifier::min_frames() const {
  std::size_t n = 1;
  while (true) {
    std::size_t len = n;
    for (const Conv1dLayer& c : convs_) len = c.output_length(len);
    if (len >= 1) return n;
    ++n;
  }
}

Tensor AcnnClassifier::attention_pool(const Tensor& frames, std::vector<double>* weights) const {
  const Tensor scores = ad::transpose(ad::matmul(frames, query_));  // [1, T]
  const Tensor attn = ad::softmax(scores);
  if (weights) weights->assign(attn.values().begin(), attn.values().end());
  return ad::matmul(attn, frames);
}

Tensor AcnnClassifier::forward(std::span<const Tensor> batch) const {
  if (batch.empty()) throw ContractError("ACNN: empty batch");
  const std::size_t minimum = min_frames();
  last_attention_.assign(batch.size(), {});
  std::vector<Tensor> pooled;
  pooled.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Tensor& x = batch[i];
    if (x.rank() != 2 || x.cols() != config_.input_dim)
      throw DimensionError(fmt::format("ACNN expects [T, {}] sequences, got {}",
                                       config_.input_dim, ad::shape_string(x.shape())));
    if (x.rows() < minimum)
      throw TooShortError(fmt::format("ACNN needs at least {} frames, got {}", minimum,
                                      x.rows()));
    Tensor h = x;
    for (const Conv1dLayer& conv : convs_) h = ad::gelu(conv(h));
    pooled.push_back(attention_pool(h, &last_attention_[i]));
  }
  return head_(ad::gelu(hidden_(ad::concat_rows(pooled))));
}

NamedTensors AcnnClassifier::parameters() const {
  NamedTensors out;
  for (std::size_t i = 0; i < convs_.size(); ++i)
    append(out, convs_[i].parameters(fmt::format("acnn.conv{}", i)));
  out.push_back({"acnn.query", query_});
  append(out, hidden_.parameters("acnn.hidden"));
  append(out, head_.parameters("acnn.head"));
  return out;
}

}  // namespace swce::models
