// core/src/losses/contrastive.cc

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

#include "swce/losses/contrastive.h"

#include <fmt/format.h>

#include <cmath>

#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"
#include "swce/losses/classification.h"

namespace swce::losses {

void ContrastiveConfig::validate() const {
  if (!(temperature > 0.0))
    throw ConfigError("temperature", fmt::format("must be positive, got {}", temperature));
  if (num_distractors == 0) throw ConfigError("num_distractors", "must be at least 1");
}

Tensor contrastive_loss(const Tensor& context, const Tensor& targets,
                        const std::vector<std::vector<std::size_t>>& candidates,
                        double temperature,
                        const std::vector<std::vector<bool>>& excluded) {
  if (!(temperature > 0.0)) throw ContractError("contrastive_loss: temperature must be > 0");
  if (context.rank() != 2 || candidates.size() != context.rows())
    throw DimensionError(fmt::format("contrastive_loss: {} candidate lists for context {}",
                                     candidates.size(), ad::shape_string(context.shape())));
  const Tensor sims = ad::cosine_similarity(context, targets);
  Tensor logits = ad::scale(ad::gather_cols(sims, candidates), 1.0 / temperature);
  if (!excluded.empty()) {
    if (excluded.size() != candidates.size())
      throw DimensionError("contrastive_loss: exclusion mask does not match candidates");
    const std::size_t width = candidates.empty() ? 0 : candidates[0].size();
    std::vector<double> offset(candidates.size() * width, 0.0);
    for (std::size_t i = 0; i < excluded.size(); ++i) {
      if (excluded[i].size() != width)
        throw DimensionError("contrastive_loss: exclusion mask does not match candidates");
      if (width > 0 && excluded[i][0])
        throw ContractError("contrastive_loss: the true target cannot be excluded");
      // Large but finite, so it vanishes under exp without tripping the
      // finiteness checks.
      for (std::size_t j = 1; j < width; ++j)
        if (excluded[i][j]) offset[i * width + j] = -1e30;
    }
    logits = ad::add(logits, Tensor::constant(logits.shape(), std::move(offset)));
  }
  const std::vector<std::size_t> positive(candidates.size(), 0);
  return cross_entropy(logits, positive);
}

Tensor codebook_diversity_loss(const Tensor& latents, const Tensor& codebook,
                               double temperature) {
  if (!(temperature > 0.0))
    throw ContractError("codebook_diversity_loss: temperature must be > 0");
  if (latents.rank() != 2 || codebook.rank() != 2 || latents.cols() != codebook.cols())
    throw DimensionError(fmt::format("codebook_diversity_loss: latents {} vs codebook {}",
                                     ad::shape_string(latents.shape()),
                                     ad::shape_string(codebook.shape())));
  const std::size_t k = codebook.rows();
  if (k < 2) throw ContractError("codebook_diversity_loss: needs at least two codes");
  // -||z - e||^2 up to the per-row constant ||z||^2, which softmax ignores.
  const Tensor cross = ad::scale(ad::matmul(latents, ad::transpose(codebook)), 2.0);
  const Tensor logits = ad::scale(
      ad::add_bias(cross, ad::neg(ad::sum_cols(ad::square(codebook)))), 1.0 / temperature);
  const Tensor p_bar = ad::mean_rows(ad::softmax(logits));
  const Tensor entropy = ad::neg(ad::sum(ad::mul(p_bar, ad::log(ad::add_scalar(p_bar, 1e-12)))));
  return ad::add_scalar(ad::scale(entropy, -1.0 / std::log(static_cast<double>(k))), 1.0);
}

double contrastive_loss(std::span<const double> context, std::span<const double> target,
                        const std::vector<std::vector<double>>& distractors,
                        double temperature) {
  const std::size_t d = context.size();
  if (target.size() != d)
    throw DimensionError("contrastive_loss: context and target differ in size");
  std::vector<double> pool(target.begin(), target.end());
  std::vector<std::size_t> cand{0};
  for (const auto& q : distractors) {
    if (q.size() != d) throw DimensionError("contrastive_loss: distractor size mismatch");
    cand.push_back(pool.size() / d);
    pool.insert(pool.end(), q.begin(), q.end());
  }
  const Tensor c = Tensor::constant({1, d}, {context.begin(), context.end()});
  const Tensor t = Tensor::constant({cand.size(), d}, std::move(pool));
  return contrastive_loss(c, t, {cand}, temperature).item();
}

}  // namespace swce::losses
