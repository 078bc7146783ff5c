// core/include/swce/training/pretrain.h

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

#ifndef SWCE_TRAINING_PRETRAIN_H_
#define SWCE_TRAINING_PRETRAIN_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "swce/autodiff/tensor.h"
#include "swce/losses/contrastive.h"
#include "swce/models/w2v_encoder.h"

namespace swce::training {

using ad::Tensor;

struct PretrainConfig {
  std::size_t steps = 500;
  std::size_t batch_size = 4;
  double lr = 3e-4;
  // Random crop length per utterance and step; 0 uses whole clips.
  std::size_t crop_samples = 32000;
  models::MaskConfig mask;
  losses::ContrastiveConfig contrastive;
  // Weight and softmax temperature of codebook_diversity_loss, added to the
  // contrastive loss to keep the codebook from collapsing onto a few rows.
  double diversity_weight = 0.1;
  double diversity_temperature = 1.0;
  std::uint64_t seed = 0;
  // Seed the codebook with latents of the untrained encoder.
  bool init_codebook_from_data = true;

  // Throws ConfigError naming the field.
  void validate() const;
};

struct PretrainResult {
  std::vector<double> loss_trace;
  // Utterances dropped because they were shorter than one mask span.
  std::size_t skipped = 0;
};

// One masked-prediction pass over a single utterance: the scalar loss and
// the bookkeeping needed to score retrieval.
struct MaskedPrediction {
  Tensor loss;  // contrastive term only
  Tensor diversity;
  std::size_t masked_steps = 0;
  // Masked steps with at least one distractor on a different code than the
  // target (distractors on the same code are identical to it and are left
  // out of both the loss and retrieval).
  std::size_t scored_steps = 0;
  // Of those, steps where the target is strictly more similar to the context
  // than every remaining distractor.
  std::size_t retrieved = 0;
  // Sum over scored steps of 1 / (1 + remaining distractors): the expected
  // number of hits of a random ranking.
  double chance_hits = 0.0;
};

// Runs encode_local, mask_time_steps, contextualize and quantize on one
// [S, 1] waveform and builds the contrastive loss over the masked steps.
// Distractors are other masked steps of the same utterance; when there are
// too few, unmasked steps fill the remainder. The loss is left undefined when
// the utterance has fewer latent steps than one mask span.
MaskedPrediction masked_prediction(const models::ToyW2vEncoder& encoder,
                                   const Tensor& waveform, const PretrainConfig& config,
                                   models::QuantizerGradient mode, std::mt19937_64& rng);

// Data-dependent codebook initialization: rows drawn from the latents of
// (up to 16 of) the usable utterances.
void initialize_codebook(models::ToyW2vEncoder& encoder, std::span<const Tensor> waveforms,
                         const PretrainConfig& config, std::mt19937_64& rng);

// Self-supervised fine-tuning of `encoder` with Adam on the contrastive
// objective; the loss trace has one entry per optimizer step.
PretrainResult pretrain_selfsupervised(models::ToyW2vEncoder& encoder,
                                       std::span<const Tensor> waveforms,
                                       const PretrainConfig& config);

struct RetrievalScore {
  double loss = 0.0;
  // retrieved / scored steps, and the same ratio for a random ranking.
  double accuracy = 0.0;
  double chance_accuracy = 0.0;
  std::size_t masked_steps = 0;
  std::size_t scored_steps = 0;
};

// Mean contrastive loss and masked-step retrieval accuracy over whole
// utterances, with masks drawn from `seed`.
RetrievalScore score_retrieval(const models::ToyW2vEncoder& encoder,
                               std::span<const Tensor> waveforms,
                               const PretrainConfig& config, std::uint64_t seed);

}  // namespace swce::training

#endif  // SWCE_TRAINING_PRETRAIN_H_
