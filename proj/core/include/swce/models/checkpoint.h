// core/include/swce/models/checkpoint.h

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

#ifndef SWCE_MODELS_CHECKPOINT_H_
#define SWCE_MODELS_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "swce/autodiff/parameters.h"

namespace swce::models {

struct StoredTensor {
  std::string name;
  ad::Shape shape;
  std::vector<double> values;

  bool operator==(const StoredTensor&) const = default;
};

// Value copy of a parameter set, in order.
using Checkpoint = std::vector<StoredTensor>;

Checkpoint snapshot(const ad::NamedTensors& params);

// Writes stored values back into the leaves of `params`. Every parameter
// must appear in the checkpoint with the same shape; throws ContractError
// otherwise.
void restore(const ad::NamedTensors& params, const Checkpoint& checkpoint);

// File layout:
//   swce-checkpoint v1\n
//   <count>\n
//   <name> <d0> <d1> ...\n      (one line per tensor, scalars have no dims)
//   end\n
//   raw little-endian IEEE-754 doubles, tensors concatenated in header order
std::string encode_checkpoint(const Checkpoint& checkpoint);
Checkpoint decode_checkpoint(const std::string& bytes);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// SHA-256 of the encoded values of `params`.
std::string parameter_hash(const ad::NamedTensors& params);

}  // namespace swce::models

#endif  // SWCE_MODELS_CHECKPOINT_H_
