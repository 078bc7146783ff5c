// core/include/swce/training/evaluate.h

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

#ifndef SWCE_TRAINING_EVALUATE_H_
#define SWCE_TRAINING_EVALUATE_H_

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "swce/autodiff/tensor.h"
#include "swce/models/classifier.h"
#include "swce/models/w2v_encoder.h"

namespace swce::training {

using ad::Tensor;

// One clip: the frontend input (a [T, D] feature sequence or a [S, 1]
// waveform, both constants) and its class index.
struct Example {
  std::string id;
  Tensor input;
  std::size_t label = 0;
};

// A named list of examples that counts how often its contents are read.
class DataSplit {
 public:
  DataSplit() = default;
  DataSplit(std::string name, std::vector<Example> examples);

  const std::string& name() const { return name_; }
  std::size_t size() const { return examples_.size(); }
  bool empty() const { return examples_.empty(); }

  // Every call counts as one access.
  const std::vector<Example>& examples() const;
  std::size_t access_count() const { return accesses_; }

 private:
  std::string name_;
  std::vector<Example> examples_;
  mutable std::size_t accesses_ = 0;
};

// Maps a clip input to the [T, D] sequence a classifier consumes.
class Frontend {
 public:
  virtual ~Frontend() = default;
  virtual Tensor operator()(const Tensor& input) const = 0;
  // Trainable parameters the output depends on (the pretrained block).
  virtual ad::NamedTensors parameters() const = 0;
};

// Inputs are already feature sequences.
class IdentityFrontend : public Frontend {
 public:
  Tensor operator()(const Tensor& input) const override { return input; }
  ad::NamedTensors parameters() const override { return {}; }
};

// Inputs are waveforms, features come from a toy encoder.
class EncoderFrontend : public Frontend {
 public:
  explicit EncoderFrontend(const models::ToyW2vEncoder& encoder) : encoder_(&encoder) {}
  Tensor operator()(const Tensor& input) const override { return encoder_->features(input); }
  ad::NamedTensors parameters() const override { return encoder_->feature_parameters(); }

 private:
  const models::ToyW2vEncoder* encoder_;
};

using ConfusionMatrix = std::array<std::array<std::size_t, models::kNumClasses>,
                                   models::kNumClasses>;

struct EvalResult {
  double accuracy = 0.0;
  // confusion[true][predicted]
  ConfusionMatrix confusion{};
  // Mean over clips of p[y] - max_{j != y} p[j].
  double mean_margin = 0.0;
  std::vector<std::size_t> predictions;
};

// Accuracy, confusion and margin from per-clip probabilities.
EvalResult summarize(const std::vector<std::vector<double>>& probabilities,
                     const std::vector<std::size_t>& labels);

// Clip-level argmax predictions of `model` over `split`, batched in order.
// Throws ContractError on an empty split. Reads the split once.
EvalResult evaluate(const models::SequenceClassifier& model, const Frontend& frontend,
                    const DataSplit& split, std::size_t batch_size = 8);

}  // namespace swce::training

#endif  // SWCE_TRAINING_EVALUATE_H_
