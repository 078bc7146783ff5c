// core/src/autodiff/parameters.cc

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

#include "swce/autodiff/parameters.h"

#include <set>

#include "swce/common/errors.h"

namespace swce::ad {

NamedTensors prefixed(const std::string& prefix, NamedTensors tensors) {
  for (NamedTensor& t : tensors) t.name = prefix + "." + t.name;
  return tensors;
}

ParameterPartition::ParameterPartition(NamedTensors pretrained, NamedTensors downstream)
    : pretrained_(std::move(pretrained)), downstream_(std::move(downstream)) {
  std::set<std::string> names;
  std::set<const void*> nodes;
  for (const NamedTensors* block : {&pretrained_, &downstream_})
    for (const NamedTensor& p : *block) {
      if (!p.tensor.defined() || !p.tensor.requires_grad() || !p.tensor.is_leaf())
        throw ContractError("partition member '" + p.name +
                            "' is not a trainable leaf tensor");
      if (!names.insert(p.name).second)
        throw ContractError("parameter name '" + p.name + "' appears twice in partition");
      if (!nodes.insert(p.tensor.node().get()).second)
        throw ContractError("parameter '" + p.name + "' is shared between entries");
    }
}

NamedTensors ParameterPartition::all() const {
  NamedTensors out = pretrained_;
  out.insert(out.end(), downstream_.begin(), downstream_.end());
  return out;
}

void ParameterPartition::check_complete(const NamedTensors& trainable) const {
  std::set<const void*> mine, theirs;
  for (const NamedTensor& p : all()) mine.insert(p.tensor.node().get());
  for (const NamedTensor& p : trainable) theirs.insert(p.tensor.node().get());
  if (mine != theirs)
    throw ContractError("parameter partition does not cover the trainable set exactly");
}

NamedTensors select(const ParameterPartition& partition, ParameterSelector selector) {
  NamedTensors out;
  if (selector.pretrained)
    out.insert(out.end(), partition.pretrained().begin(), partition.pretrained().end());
  if (selector.downstream)
    out.insert(out.end(), partition.downstream().begin(), partition.downstream().end());
  return out;
}

}  // namespace swce::ad
