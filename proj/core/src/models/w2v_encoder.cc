// core/src/models/w2v_encoder.cc

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

#include "swce/models/w2v_encoder.h"

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"

namespace swce::models {

std::size_t W2vEncoderConfig::total_stride() const {
  std::size_t s = 1;
  for (std::size_t k : conv_strides) s *= k;
  return s;
}

std::vector<std::size_t> MaskedLatents::masked_steps() const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < mask.size(); ++t)
    if (mask[t]) out.push_back(t);
  return out;
}

std::size_t nearest_code(std::span<const double> codebook, std::size_t dim,
                         std::span<const double> z) {
  const std::size_t rows = codebook.size() / dim;
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rows; ++k) {
    double d = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double diff = z[j] - codebook[k * dim + j];
      d += diff * diff;
    }
    if (d < best_dist) {
      best_dist = d;
      best = k;
    }
  }
  return best;
}

ToyW2vEncoder::ToyW2vEncoder(const W2vEncoderConfig& config, Rng& rng) : config_(config) {
  if (config.dim == 0 || config.heads == 0 || config.dim % config.heads != 0)
    throw ContractError("w2v encoder: dim must be a positive multiple of heads");
  if (config.conv_strides.empty() || config.position_kernel % 2 == 0 ||
      config.codebook_size == 0 || config.pool_steps == 0)
    throw ContractError("w2v encoder: invalid geometry");
  std::size_t in = 1;
  for (std::size_t stride : config.conv_strides) {
    local_convs_.emplace_back(in, config.dim, stride, stride, 0, rng);
    local_norms_.emplace_back(config.dim);
    in = config.dim;
  }
  position_conv_ = Conv1dLayer(config.dim, config.dim, config.position_kernel, 1,
                               config.position_kernel / 2, rng);
  input_norm_ = LayerNorm(config.dim);
  for (std::size_t l = 0; l < config.transformer_layers; ++l) {
    TransformerLayer layer;
    layer.query = Linear(config.dim, config.dim, rng);
    layer.key = Linear(config.dim, config.dim, rng);
    layer.value = Linear(config.dim, config.dim, rng);
    layer.out = Linear(config.dim, config.dim, rng);
    layer.attn_norm = LayerNorm(config.dim);
    layer.ffn_in = Linear(config.dim, config.ffn_dim, rng);
    layer.ffn_out = Linear(config.ffn_dim, config.dim, rng);
    layer.ffn_norm = LayerNorm(config.dim);
    layers_.push_back(std::move(layer));
  }
  output_proj_ = Linear(config.dim, config.dim, rng);
  codebook_ = normal_parameter({config.codebook_size, config.dim}, 1.0, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> mask(config.dim);
  for (double& v : mask) v = unit(rng);
  mask_embedding_ = Tensor::parameter({config.dim}, std::move(mask));
}

Tensor ToyW2vEncoder::encode_local(const Tensor& waveform) const {
  const std::size_t stride = config_.total_stride();
  if (waveform.rank() != 2 || waveform.cols() != 1)
    throw DimensionError("local encoder expects a [S, 1] waveform, got " +
                         ad::shape_string(waveform.shape()));
  if (waveform.rows() < stride)
    throw TooShortError(fmt::format("waveform of {} samples is shorter than one {}-sample step",
                                    waveform.rows(), stride));
  Tensor h = waveform;
  for (std::size_t i = 0; i < local_convs_.size(); ++i)
    h = ad::gelu(local_norms_[i](local_convs_[i](h)));
  return h;
}

Tensor ToyW2vEncoder::self_attention(const TransformerLayer& layer, const Tensor& x) const {
  const std::size_t heads = config_.heads;
  const std::size_t head_dim = config_.dim / heads;
  const Tensor q = layer.query(x), k = layer.key(x), v = layer.value(x);
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
  std::vector<Tensor> outputs;
  outputs.reserve(heads);
  for (std::size_t h = 0; h < heads; ++h) {
    const Tensor qh = ad::slice_cols(q, h * head_dim, head_dim);
    const Tensor kh = ad::slice_cols(k, h * head_dim, head_dim);
    const Tensor vh = ad::slice_cols(v, h * head_dim, head_dim);
    const Tensor attn = ad::softmax(ad::scale(ad::matmul(qh, ad::transpose(kh)), scale));
    outputs.push_back(ad::matmul(attn, vh));
  }
  return layer.out(heads == 1 ? outputs[0] : ad::concat_cols(outputs));
}

Tensor ToyW2vEncoder::contextualize(const Tensor& latents) const {
  if (latents.rank() != 2 || latents.cols() != config_.dim)
    throw DimensionError(fmt::format("context encoder expects [T, {}], got {}", config_.dim,
                                     ad::shape_string(latents.shape())));
  Tensor x = input_norm_(ad::add(latents, ad::gelu(position_conv_(latents))));
  for (const TransformerLayer& layer : layers_) {
    x = layer.attn_norm(ad::add(x, self_attention(layer, x)));
    x = layer.ffn_norm(ad::add(x, layer.ffn_out(ad::gelu(layer.ffn_in(x)))));
  }
  return output_proj_(x);
}

Quantized ToyW2vEncoder::quantize(const Tensor& latents, QuantizerGradient mode) const {
  if (latents.rank() != 2 || latents.cols() != config_.dim)
    throw DimensionError(fmt::format("quantizer expects [T, {}], got {}", config_.dim,
                                     ad::shape_string(latents.shape())));
  const std::size_t steps = latents.rows();
  Quantized out;
  out.indices.resize(steps);
  for (std::size_t t = 0; t < steps; ++t)
    out.indices[t] = nearest_code(codebook_.values(), config_.dim,
                                  latents.values().subspan(t * config_.dim, config_.dim));
  Tensor rows = ad::gather_rows(codebook_, out.indices);
  out.vectors = mode == QuantizerGradient::kStraightThrough
                    ? ad::straight_through(rows, latents)
                    : rows;
  return out;
}

MaskedLatents ToyW2vEncoder::mask_time_steps(const Tensor& latents, const MaskConfig& config,
                                             Rng& rng) const {
  const std::size_t steps = latents.rows();
  if (config.span == 0 || steps < config.span)
    throw ContractError(fmt::format("cannot mask spans of {} in a sequence of {} steps",
                                    config.span, steps));
  if (config.prob < 0.0 || config.prob > 1.0)
    throw ContractError("mask probability must lie in [0, 1]");
  const std::size_t starts = steps - config.span + 1;
  std::vector<bool> mask(steps, false);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool any = false;
  for (std::size_t s = 0; s < starts; ++s) {
    if (unit(rng) < config.prob) {
      for (std::size_t k = 0; k < config.span; ++k) mask[s + k] = true;
      any = true;
    }
  }
  if (!any) {
    std::uniform_int_distribution<std::size_t> pick(0, starts - 1);
    const std::size_t s = pick(rng);
    for (std::size_t k = 0; k < config.span; ++k) mask[s + k] = true;
  }
  MaskedLatents out;
  out.latents = ad::replace_rows(latents, mask, mask_embedding_);
  out.mask = std::move(mask);
  return out;
}

std::size_t ToyW2vEncoder::min_feature_samples() const {
  return config_.total_stride() * config_.pool_steps;
}

Tensor ToyW2vEncoder::features(const Tensor& waveform) const {
  if (waveform.rank() == 2 && waveform.rows() < min_feature_samples())
    throw TooShortError(fmt::format("waveform of {} samples is shorter than one {}-sample "
                                    "feature frame",
                                    waveform.rows(), min_feature_samples()));
  const Tensor c = contextualize(encode_local(waveform));
  const std::size_t frames = c.rows() / config_.pool_steps;
  std::vector<Tensor> pooled;
  pooled.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f)
    pooled.push_back(ad::reshape(
        ad::mean_rows(ad::slice_rows(c, f * config_.pool_steps, config_.pool_steps)),
        {1, config_.dim}));
  return ad::concat_rows(pooled);
}

NamedTensors ToyW2vEncoder::feature_parameters() const {
  NamedTensors out;
  for (std::size_t i = 0; i < local_convs_.size(); ++i) {
    append(out, local_convs_[i].parameters(fmt::format("w2v.local{}.conv", i)));
    append(out, local_norms_[i].parameters(fmt::format("w2v.local{}.norm", i)));
  }
  append(out, position_conv_.parameters("w2v.pos_conv"));
  append(out, input_norm_.parameters("w2v.input_norm"));
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const TransformerLayer& layer = layers_[l];
    const std::string p = fmt::format("w2v.layer{}", l);
    append(out, layer.query.parameters(p + ".query"));
    append(out, layer.key.parameters(p + ".key"));
    append(out, layer.value.parameters(p + ".value"));
    append(out, layer.out.parameters(p + ".out"));
    append(out, layer.attn_norm.parameters(p + ".attn_norm"));
    append(out, layer.ffn_in.parameters(p + ".ffn_in"));
    append(out, layer.ffn_out.parameters(p + ".ffn_out"));
    append(out, layer.ffn_norm.parameters(p + ".ffn_norm"));
  }
  append(out, output_proj_.parameters("w2v.output_proj"));
  return out;
}

NamedTensors ToyW2vEncoder::parameters() const {
  NamedTensors out = feature_parameters();
  out.push_back({"w2v.codebook", codebook_});
  out.push_back({"w2v.mask_embedding", mask_embedding_});
  return out;
}

void ToyW2vEncoder::init_codebook_from(const Tensor& latents, Rng& rng) {
  const std::size_t steps = latents.rows(), dim = config_.dim;
  if (latents.cols() != dim) throw DimensionError("codebook init: latent width mismatch");
  std::uniform_int_distribution<std::size_t> pick(0, steps - 1);
  auto book = codebook_.mutable_values();
  for (std::size_t k = 0; k < config_.codebook_size; ++k) {
    const std::size_t t = pick(rng);
    for (std::size_t j = 0; j < dim; ++j) book[k * dim + j] = latents.at(t * dim + j);
  }
}

}  // namespace swce::models
