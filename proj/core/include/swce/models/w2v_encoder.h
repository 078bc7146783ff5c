// core/include/swce/models/w2v_encoder.h

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

#ifndef SWCE_MODELS_W2V_ENCODER_H_
#define SWCE_MODELS_W2V_ENCODER_H_

#include <cstddef>
#include <vector>

#include "swce/models/layers.h"

namespace swce::models {

struct W2vEncoderConfig {
  std::size_t dim = 32;
  // Local encoder: one conv block per entry, kernel == stride, so the step
  // count is floor(samples / product) exactly.
  std::vector<std::size_t> conv_strides = {5, 8, 8};
  std::size_t transformer_layers = 2;
  std::size_t heads = 2;
  std::size_t ffn_dim = 64;
  // Odd width of the convolutional relative position embedding.
  std::size_t position_kernel = 9;
  std::size_t codebook_size = 64;
  // Latent steps averaged into one downstream feature frame (10 x 20 ms).
  std::size_t pool_steps = 10;

  std::size_t total_stride() const;
};

struct MaskConfig {
  double prob = 0.065;
  std::size_t span = 4;
};

struct MaskedLatents {
  Tensor latents;          // masked steps replaced by the mask embedding
  std::vector<bool> mask;  // per step
  std::vector<std::size_t> masked_steps() const;
};

enum class QuantizerGradient {
  // Codebook rows get the gradient of q, and the encoder gets it too as if
  // quantization were the identity.
  kStraightThrough,
  // Only the codebook rows get gradient; q is a constant w.r.t. z.
  kCodebookOnly,
};

struct Quantized {
  Tensor vectors;                    // [T, dim], each row a codebook row
  std::vector<std::size_t> indices;  // chosen row per step
};

// Nearest codebook row in Euclidean distance, lowest index on ties.
std::size_t nearest_code(std::span<const double> codebook, std::size_t dim,
                         std::span<const double> z);

// Three-stage self-supervised speech encoder at toy scale:
//   local encoder   waveform [S, 1] -> z [S / 320, dim]
//                   (conv -> layer norm -> GELU per block)
//   context encoder z -> c: conv position embedding, post-norm transformer
//                   layers with multi-head self-attention, output projection
//   quantizer       z -> q, nearest row of a learned codebook
class ToyW2vEncoder {
 public:
  ToyW2vEncoder(const W2vEncoderConfig& config, Rng& rng);

  // Throws TooShortError below one step (320 samples by default).
  Tensor encode_local(const Tensor& waveform) const;
  Tensor contextualize(const Tensor& latents) const;
  Quantized quantize(const Tensor& latents,
                     QuantizerGradient mode = QuantizerGradient::kStraightThrough) const;

  // Chooses span starts independently with probability `prob` among the
  // steps where a full span fits, masks the union of the spans, and forces a
  // single random span when nothing was chosen. Throws ContractError when
  // the sequence is shorter than the span.
  MaskedLatents mask_time_steps(const Tensor& latents, const MaskConfig& config,
                                Rng& rng) const;

  // Downstream features: contextualize(encode_local(w)) averaged over
  // non-overlapping pool_steps windows -> [floor(T / pool_steps), dim].
  Tensor features(const Tensor& waveform) const;
  std::size_t min_feature_samples() const;

  // Every trainable tensor.
  NamedTensors parameters() const;
  // The subset that features() depends on (no codebook, no mask embedding).
  NamedTensors feature_parameters() const;

  // Replaces the codebook rows with rows of `latents` picked by `rng`
  // (data-dependent initialization).
  void init_codebook_from(const Tensor& latents, Rng& rng);

  const W2vEncoderConfig& config() const { return config_; }
  const Tensor& codebook() const { return codebook_; }
  const Tensor& mask_embedding() const { return mask_embedding_; }

 private:
  struct TransformerLayer {
    Linear query, key, value, out;
    LayerNorm attn_norm;
    Linear ffn_in, ffn_out;
    LayerNorm ffn_norm;
  };

  Tensor self_attention(const TransformerLayer& layer, const Tensor& x) const;

  W2vEncoderConfig config_;
  std::vector<Conv1dLayer> local_convs_;
  std::vector<LayerNorm> local_norms_;
  Conv1dLayer position_conv_;
  LayerNorm input_norm_;
  std::vector<TransformerLayer> layers_;
  Linear output_proj_;
  Tensor codebook_;
  Tensor mask_embedding_;
};

}  // namespace swce::models

#endif  // SWCE_MODELS_W2V_ENCODER_H_
