// core/include/swce/autodiff/parameters.h

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

#ifndef SWCE_AUTODIFF_PARAMETERS_H_
#define SWCE_AUTODIFF_PARAMETERS_H_

#include <string>
#include <vector>

#include "swce/autodiff/tensor.h"

namespace swce::ad {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};
using NamedTensors = std::vector<NamedTensor>;

// Prefixes every name with `prefix` + ".".
NamedTensors prefixed(const std::string& prefix, NamedTensors tensors);

// Trainable parameters split into the pretrained encoder block and the
// downstream classifier block. The two blocks are disjoint, both by name and
// by tensor identity, and every member requires grad.
class ParameterPartition {
 public:
  ParameterPartition() = default;
  ParameterPartition(NamedTensors pretrained, NamedTensors downstream);

  const NamedTensors& pretrained() const { return pretrained_; }
  const NamedTensors& downstream() const { return downstream_; }
  NamedTensors all() const;

  // Throws ContractError unless the union of both blocks is exactly
  // `trainable` (same tensors, any order).
  void check_complete(const NamedTensors& trainable) const;

 private:
  NamedTensors pretrained_;
  NamedTensors downstream_;
};

// Which blocks of a partition an optimizer step may touch.
struct ParameterSelector {
  bool pretrained = false;
  bool downstream = false;

  static ParameterSelector none() { return {false, false}; }
  static ParameterSelector downstream_only() { return {false, true}; }
  static ParameterSelector both() { return {true, true}; }
  bool empty() const { return !pretrained && !downstream; }
  bool operator==(const ParameterSelector&) const = default;
};

// Parameters of `partition` picked by `selector`, pretrained block first.
NamedTensors select(const ParameterPartition& partition, ParameterSelector selector);

}  // namespace swce::ad

#endif  // SWCE_AUTODIFF_PARAMETERS_H_
