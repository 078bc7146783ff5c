// core/include/swce/losses/contrastive.h

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

#ifndef SWCE_LOSSES_CONTRASTIVE_H_
#define SWCE_LOSSES_CONTRASTIVE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "swce/autodiff/tensor.h"

namespace swce::losses {

using ad::Tensor;

struct ContrastiveConfig {
  // Divisor of the cosine similarities.
  double temperature = 0.1;
  // Distractors per masked step, drawn from other masked steps of the same
  // utterance.
  std::size_t num_distractors = 10;

  // Throws ConfigError on temperature <= 0 or num_distractors == 0.
  void validate() const;
};

// Masked-prediction objective, averaged over masked steps:
//
//   L_t = -log( exp(sim(c_t, q_t) / T) / sum_{q in Q_t} exp(sim(c_t, q) / T) )
//
// with sim the cosine similarity and Q_t = {q_t} + distractors.
//
//   context:    [M, D], one row per masked step
//   targets:    [P, D], pool of quantized vectors
//   candidates: M lists into `targets` rows; entry 0 is the true q_t and
//               the rest are distractors. All lists have the same length.
//
// `excluded`, when non-empty, has the shape of `candidates` and drops the
// flagged distractors from the softmax (used for distractors identical to
// the true target). Entry 0 may not be excluded.
//
// Throws ContractError on a zero-norm row.
Tensor contrastive_loss(const Tensor& context, const Tensor& targets,
                        const std::vector<std::vector<std::size_t>>& candidates,
                        double temperature,
                        const std::vector<std::vector<bool>>& excluded = {});

// Codebook usage penalty 1 - H(p_bar) / ln K, where p_bar is the average
// over steps of the soft assignment
//
//   p_t(k) = softmax_k( -||z_t - e_k||^2 / temperature ).
//
// It is 0 when the batch spreads evenly over all K codes and approaches 1 when
// every step lands on one code.
//   latents:  [T, D]
//   codebook: [K, D]
Tensor codebook_diversity_loss(const Tensor& latents, const Tensor& codebook,
                               double temperature);

// Single-step convenience form on plain vectors.
double contrastive_loss(std::span<const double> context, std::span<const double> target,
                        const std::vector<std::vector<double>>& distractors,
                        double temperature);

}  // namespace swce::losses

#endif  // SWCE_LOSSES_CONTRASTIVE_H_
