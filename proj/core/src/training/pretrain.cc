// core/src/training/pretrain.cc

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

#include "swce/training/pretrain.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "swce/autodiff/adam.h"
#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"

namespace swce::training {

void PretrainConfig::validate() const {
  if (steps == 0) throw ConfigError("pretrain.steps", "must be at least 1");
  if (batch_size == 0) throw ConfigError("pretrain.batch_size", "must be at least 1");
  if (!(lr > 0.0)) throw ConfigError("pretrain.lr", fmt::format("must be positive, got {}", lr));
  if (!(mask.prob >= 0.0 && mask.prob <= 1.0))
    throw ConfigError("pretrain.mask_prob", "must lie in [0, 1]");
  if (mask.span == 0) throw ConfigError("pretrain.mask_span", "must be at least 1");
  contrastive.validate();
  if (!(diversity_weight >= 0.0))
    throw ConfigError("pretrain.diversity_weight", "must be non-negative");
  if (!(diversity_temperature > 0.0))
    throw ConfigError("pretrain.diversity_temperature", "must be positive");
}

namespace {

double cosine(std::span<const double> a, std::span<const double> b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

// `count` distinct entries of `pool` (all of them, shuffled, if fewer).
std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool,
                                                    std::size_t count, std::mt19937_64& rng) {
  const std::size_t n = std::min(count, pool.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(n);
  return pool;
}

std::size_t min_samples(const models::ToyW2vEncoder& encoder, const PretrainConfig& config) {
  return encoder.config().total_stride() * config.mask.span;
}

}  // namespace

MaskedPrediction masked_prediction(const models::ToyW2vEncoder& encoder,
                                   const Tensor& waveform, const PretrainConfig& config,
                                   models::QuantizerGradient mode, std::mt19937_64& rng) {
  MaskedPrediction out;
  if (waveform.rows() < min_samples(encoder, config)) return out;
  const Tensor z = encoder.encode_local(waveform);
  const std::size_t steps = z.rows();
  const models::MaskedLatents masked = encoder.mask_time_steps(z, config.mask, rng);
  const Tensor c = encoder.contextualize(masked.latents);
  const models::Quantized q = encoder.quantize(z, mode);

  const std::vector<std::size_t> positions = masked.masked_steps();
  std::vector<std::size_t> unmasked;
  for (std::size_t t = 0; t < steps; ++t)
    if (!masked.mask[t]) unmasked.push_back(t);
  const std::size_t k = config.contrastive.num_distractors;

  std::vector<std::vector<std::size_t>> candidates;
  candidates.reserve(positions.size());
  for (std::size_t t : positions) {
    std::vector<std::size_t> others;
    for (std::size_t u : positions)
      if (u != t) others.push_back(u);
    std::vector<std::size_t> row{t};
    for (std::size_t d : sample_without_replacement(others, k, rng)) row.push_back(d);
    if (row.size() <= k) {
      for (std::size_t d : sample_without_replacement(unmasked, k + 1 - row.size(), rng))
        row.push_back(d);
    }
    // Very short utterances: repeat other steps until the list is full.
    std::uniform_int_distribution<std::size_t> any(0, steps - 2);
    while (row.size() <= k) {
      const std::size_t d = any(rng);
      row.push_back(d >= t ? d + 1 : d);
    }
    candidates.push_back(std::move(row));
  }

  std::vector<std::vector<bool>> excluded;
  excluded.reserve(candidates.size());
  for (const auto& row : candidates) {
    std::vector<bool> same(row.size(), false);
    for (std::size_t j = 1; j < row.size(); ++j) same[j] = q.indices[row[j]] == q.indices[row[0]];
    excluded.push_back(std::move(same));
  }

  const Tensor context = ad::gather_rows(c, positions);
  out.loss = losses::contrastive_loss(context, q.vectors, candidates,
                                      config.contrastive.temperature, excluded);
  out.masked_steps = positions.size();
  out.diversity = losses::codebook_diversity_loss(z, encoder.codebook(),
                                                  config.diversity_temperature);

  const std::size_t dim = c.cols();
  auto row_of = [&](std::size_t j) { return q.vectors.values().subspan(j * dim, dim); };
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto ct = c.values().subspan(positions[i] * dim, dim);
    const double positive = cosine(ct, row_of(candidates[i][0]));
    std::size_t rivals = 0;
    bool first = true;
    for (std::size_t j = 1; j < candidates[i].size(); ++j) {
      if (excluded[i][j]) continue;
      ++rivals;
      if (cosine(ct, row_of(candidates[i][j])) >= positive) first = false;
    }
    if (rivals == 0) continue;
    ++out.scored_steps;
    out.chance_hits += 1.0 / static_cast<double>(rivals + 1);
    if (first) ++out.retrieved;
  }
  return out;
}

void initialize_codebook(models::ToyW2vEncoder& encoder, std::span<const Tensor> waveforms,
                         const PretrainConfig& config, std::mt19937_64& rng) {
  std::vector<Tensor> latents;
  for (const Tensor& w : waveforms) {
    if (latents.size() == 16) break;
    if (w.rows() >= min_samples(encoder, config))
      latents.push_back(encoder.encode_local(w).detach());
  }
  if (latents.empty()) throw ContractError("initialize_codebook: no usable utterance");
  encoder.init_codebook_from(ad::concat_rows(latents), rng);
}

PretrainResult pretrain_selfsupervised(models::ToyW2vEncoder& encoder,
                                       std::span<const Tensor> waveforms,
                                       const PretrainConfig& config) {
  config.validate();
  PretrainResult result;
  std::vector<const Tensor*> usable;
  for (const Tensor& w : waveforms) {
    if (w.rows() >= min_samples(encoder, config))
      usable.push_back(&w);
    else
      ++result.skipped;
  }
  if (usable.empty())
    throw ContractError(fmt::format("pretrain: none of {} utterances is long enough to mask",
                                    waveforms.size()));

  std::mt19937_64 rng(config.seed);
  if (config.init_codebook_from_data) initialize_codebook(encoder, waveforms, config, rng);

  const ad::NamedTensors params = encoder.parameters();
  ad::AdamState adam(ad::AdamConfig{.lr = config.lr});
  std::uniform_int_distribution<std::size_t> pick_clip(0, usable.size() - 1);
  for (std::size_t step = 0; step < config.steps; ++step) {
    std::vector<Tensor> losses;
    for (std::size_t b = 0; b < config.batch_size; ++b) {
      const Tensor& full = *usable[pick_clip(rng)];
      Tensor clip = full;
      const std::size_t len = full.rows();
      if (config.crop_samples > 0 && len > config.crop_samples) {
        std::uniform_int_distribution<std::size_t> pick_start(0, len - config.crop_samples);
        const std::size_t start = pick_start(rng);
        auto v = full.values().subspan(start, config.crop_samples);
        clip = Tensor::constant({config.crop_samples, 1}, {v.begin(), v.end()});
      }
      MaskedPrediction mp =
          masked_prediction(encoder, clip, config, models::QuantizerGradient::kStraightThrough, rng);
      if (!mp.loss.defined()) continue;
      Tensor total = mp.loss;
      if (config.diversity_weight > 0.0)
        total = ad::add(total, ad::scale(mp.diversity, config.diversity_weight));
      losses.push_back(ad::reshape(total, {1, 1}));
    }
    if (losses.empty()) {
      ++result.skipped;
      continue;
    }
    const Tensor loss = ad::mean(ad::concat_rows(losses));
    for (const auto& p : params) {
      Tensor t = p.tensor;
      t.zero_grad();
    }
    loss.backward();
    ad::adam_step(params, adam);
    if (!std::isfinite(loss.item()))
      throw NumericError(fmt::format("pretrain: non-finite loss at step {}", step));
    result.loss_trace.push_back(loss.item());
  }
  return result;
}

RetrievalScore score_retrieval(const models::ToyW2vEncoder& encoder,
                               std::span<const Tensor> waveforms,
                               const PretrainConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RetrievalScore score;
  std::size_t hits = 0, utterances = 0;
  double chance = 0.0;
  for (const Tensor& w : waveforms) {
    MaskedPrediction mp =
        masked_prediction(encoder, w, config, models::QuantizerGradient::kCodebookOnly, rng);
    if (!mp.loss.defined()) continue;
    score.loss += mp.loss.item();
    ++utterances;
    score.masked_steps += mp.masked_steps;
    score.scored_steps += mp.scored_steps;
    hits += mp.retrieved;
    chance += mp.chance_hits;
  }
  if (utterances == 0) throw ContractError("score_retrieval: no utterance long enough to mask");
  score.loss /= static_cast<double>(utterances);
  if (score.scored_steps > 0) {
    score.accuracy = static_cast<double>(hits) / static_cast<double>(score.scored_steps);
    score.chance_accuracy = chance / static_cast<double>(score.scored_steps);
  }
  return score;
}

}  // namespace swce::training
