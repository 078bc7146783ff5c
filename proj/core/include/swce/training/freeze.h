// core/include/swce/training/freeze.h

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

#ifndef SWCE_TRAINING_FREEZE_H_
#define SWCE_TRAINING_FREEZE_H_

#include <cstdint>
#include <string_view>

#include "swce/autodiff/parameters.h"

namespace swce::training {

enum class FreezeUnit { kSteps, kEpochs };

// Parses "steps" / "epochs"; throws ConfigError otherwise.
FreezeUnit parse_freeze_unit(std::string_view text);

// The pretrained block stays frozen for the first `freeze_steps` optimizer
// updates (steps counted from 0).
struct FreezeSchedule {
  std::uint64_t freeze_steps = 0;

  // Converts a length given in `unit` to optimizer steps.
  static FreezeSchedule from(std::uint64_t length, FreezeUnit unit,
                             std::uint64_t steps_per_epoch);
};

// Downstream only while step < freeze_steps, both blocks afterwards.
ad::ParameterSelector active_params(std::uint64_t step, const FreezeSchedule& schedule);

ad::NamedTensors active_params(std::uint64_t step, const FreezeSchedule& schedule,
                               const ad::ParameterPartition& partition);

}  // namespace swce::training

#endif  // SWCE_TRAINING_FREEZE_H_
