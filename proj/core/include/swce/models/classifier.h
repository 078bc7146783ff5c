// core/include/swce/models/classifier.h

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

#ifndef SWCE_MODELS_CLASSIFIER_H_
#define SWCE_MODELS_CLASSIFIER_H_

#include <span>
#include <string>

#include "swce/autodiff/parameters.h"
#include "swce/autodiff/tensor.h"

namespace swce::models {

inline constexpr std::size_t kNumClasses = 3;

// Downstream sequence classifier: a batch of [T_i, D] sequences to [B, C]
// logits.
class SequenceClassifier {
 public:
  virtual ~SequenceClassifier() = default;

  virtual ad::Tensor forward(std::span<const ad::Tensor> batch) const = 0;
  virtual ad::NamedTensors parameters() const = 0;
  virtual std::size_t input_dim() const = 0;
  virtual std::string name() const = 0;
};

}  // namespace swce::models

#endif  // SWCE_MODELS_CLASSIFIER_H_
