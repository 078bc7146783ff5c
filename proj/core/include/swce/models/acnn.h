// core/include/swce/models/acnn.h

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

#ifndef SWCE_MODELS_ACNN_H_
#define SWCE_MODELS_ACNN_H_

#include <span>
#include <vector>

#include "swce/models/classifier.h"
#include "swce/models/layers.h"

namespace swce::models {

struct AcnnConfig {
  std::size_t input_dim = 38;
  std::size_t channels = 64;
  std::size_t num_conv = 3;
  std::size_t kernel = 5;
  std::size_t stride = 2;
  std::size_t padding = 1;
  std::size_t hidden_dim = 32;
  std::size_t num_classes = kNumClasses;
};

// Convolutional classifier with attention pooling:
//   conv(kernel 5, stride 2) -> GELU, three times
//   scores_t = query . h_t, a = softmax_t(scores), pooled = sum_t a_t h_t
//   linear -> GELU -> linear
class AcnnClassifier : public SequenceClassifier {
 public:
  AcnnClassifier(const AcnnConfig& config, Rng& rng);

  // Throws TooShortError, naming min_frames(), for a sequence that does not
  // survive the conv stack.
  Tensor forward(std::span<const Tensor> batch) const override;

  // Attention pooling of frame embeddings h [T, C] -> [1, C]. The weights
  // used are written to `weights` when given.
  Tensor attention_pool(const Tensor& frames, std::vector<double>* weights = nullptr) const;

  // Per-sample attention weights of the most recent forward().
  const std::vector<std::vector<double>>& last_attention() const { return last_attention_; }

  std::size_t min_frames() const;
  NamedTensors parameters() const override;
  std::size_t input_dim() const override { return config_.input_dim; }
  std::string name() const override { return "ACNN"; }
  const AcnnConfig& config() const { return config_; }

 private:
  AcnnConfig config_;
  std::vector<Conv1dLayer> convs_;
  Tensor query_;
  Linear hidden_;
  Linear head_;
  mutable std::vector<std::vector<double>> last_attention_;
};

}  // namespace swce::models

#endif  // SWCE_MODELS_ACNN_H_
