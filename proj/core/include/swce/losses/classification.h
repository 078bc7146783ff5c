// core/include/swce/losses/classification.h

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

#ifndef SWCE_LOSSES_CLASSIFICATION_H_
#define SWCE_LOSSES_CLASSIFICATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swce/autodiff/tensor.h"

namespace swce::losses {

using ad::Tensor;

// Throws ContractError unless `probs` is a simplex vector (entries >= 0, sum
// within 1e-9 of 1) and label < probs.size().
void validate_probability_vector(std::span<const double> probs, std::size_t label);

// Soft weight of one sample:
//
//   w = exp( -( sum_{j != m} (p[m] - p[j]) ) / N )
//
// evaluated as the literal sum over wrong classes, with N = probs.size().
// The gaps are signed, so a confidently wrong sample (p[m] small) gets a
// weight above 1 and a confident correct one gets a weight below 1.
double soft_weight(std::span<const double> probs, std::size_t label);

// Detached soft weights of a batch, from softmax(logits) row by row.
std::vector<double> soft_weights(const Tensor& logits, std::span<const std::size_t> labels);

// -log softmax(logits)[label] per row, via log-sum-exp: [B, N] -> [B].
Tensor per_sample_cross_entropy(const Tensor& logits, std::span<const std::size_t> labels);

// Batch mean of per_sample_cross_entropy.
Tensor cross_entropy(const Tensor& logits, std::span<const std::size_t> labels);

struct SwceOptions {
  // Let gradients flow through the soft weight (ablation). Off by default:
  // the weight is a constant rescaling of each sample's CE gradient.
  bool weight_gradient = false;
  // Replace every weight by this value. With 1.0 the loss reproduces
  // cross_entropy bitwise.
  std::optional<double> weight_override;
};

// Batch mean of w_i * CE_i, weights recomputed from the current logits.
Tensor swce_loss(const Tensor& logits, std::span<const std::size_t> labels,
                 const SwceOptions& options = {});

enum class LossKind { kCrossEntropy, kSoftWeighted };

Tensor classification_loss(LossKind kind, const Tensor& logits,
                           std::span<const std::size_t> labels);

}  // namespace swce::losses

#endif  // SWCE_LOSSES_CLASSIFICATION_H_
