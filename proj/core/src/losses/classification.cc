// core/src/losses/classification.cc

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

#include "swce/losses/classification.h"

#include <fmt/format.h>

#include <cmath>

#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"

namespace swce::losses {

void validate_probability_vector(std::span<const double> probs, std::size_t label) {
  if (probs.empty()) throw ContractError("probability vector is empty");
  if (label >= probs.size())
    throw ContractError(fmt::format("label {} out of range [0, {})", label, probs.size()));
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0)
      throw ContractError("probability vector has a negative or non-finite entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ContractError(fmt::format("probability vector sums to {}, not 1", total));
}

double soft_weight(std::span<const double> probs, std::size_t label) {
  validate_probability_vector(probs, label);
  const double n = static_cast<double>(probs.size());
  double gap_sum = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j)
    if (j != label) gap_sum += probs[label] - probs[j];
  return std::exp(-gap_sum / n);
}

std::vector<double> soft_weights(const Tensor& logits, std::span<const std::size_t> labels) {
  const Tensor probs = ad::softmax(logits.detach());
  const std::size_t b = logits.rows(), n = logits.cols();
  if (labels.size() != b)
    throw DimensionError(fmt::format("{} labels for logits {}", labels.size(),
                                     ad::shape_string(logits.shape())));
  std::vector<double> w(b);
  for (std::size_t i = 0; i < b; ++i) {
    auto row = probs.values().subspan(i * n, n);
    w[i] = soft_weight(row, labels[i]);
  }
  return w;
}

Tensor per_sample_cross_entropy(const Tensor& logits, std::span<const std::size_t> labels) {
  if (logits.rank() != 2)
    throw DimensionError("cross entropy expects logits [B, N], got " +
                         ad::shape_string(logits.shape()));
  for (std::size_t y : labels)
    if (y >= logits.cols())
      throw ContractError(fmt::format("label {} out of range [0, {})", y, logits.cols()));
  return ad::neg(ad::pick(ad::log_softmax(logits), labels));
}

Tensor cross_entropy(const Tensor& logits, std::span<const std::size_t> labels) {
  return ad::mean(per_sample_cross_entropy(logits, labels));
}

Tensor swce_loss(const Tensor& logits, std::span<const std::size_t> labels,
                 const SwceOptions& options) {
  const Tensor ce = per_sample_cross_entropy(logits, labels);
  const std::size_t b = logits.rows();
  Tensor weights;
  if (options.weight_override) {
    weights = Tensor::constant({b}, std::vector<double>(b, *options.weight_override));
  } else if (options.weight_gradient) {
    // sum_{j != m} (p[m] - p[j]) == sum_j (p[m] - p[j]) == N p[m] - sum_j p[j]
    const double n = static_cast<double>(logits.cols());
    const Tensor probs = ad::softmax(logits);
    const Tensor gaps = ad::sub(ad::scale(ad::pick(probs, labels), n), ad::sum_cols(probs));
    weights = ad::exp(ad::scale(gaps, -1.0 / n));
  } else {
    weights = Tensor::constant({b}, soft_weights(logits, labels));
  }
  return ad::mean(ad::mul(ce, weights));
}

Tensor classification_loss(LossKind kind, const Tensor& logits,
                           std::span<const std::size_t> labels) {
  return kind == LossKind::kSoftWeighted ? swce_loss(logits, labels)
                                         : cross_entropy(logits, labels);
}

}  // namespace swce::losses
