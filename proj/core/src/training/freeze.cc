// core/src/training/freeze.cc

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

#include "swce/training/freeze.h"

#include <string>

#include "swce/common/errors.h"

namespace swce::training {

FreezeUnit parse_freeze_unit(std::string_view text) {
  if (text == "steps") return FreezeUnit::kSteps;
  if (text == "epochs") return FreezeUnit::kEpochs;
  throw ConfigError("freeze_unit", "expected 'steps' or 'epochs', got '" + std::string(text) + "'");
}

FreezeSchedule FreezeSchedule::from(std::uint64_t length, FreezeUnit unit,
                                    std::uint64_t steps_per_epoch) {
  if (unit == FreezeUnit::kSteps) return {length};
  return {length * steps_per_epoch};
}

ad::ParameterSelector active_params(std::uint64_t step, const FreezeSchedule& schedule) {
  return step < schedule.freeze_steps ? ad::ParameterSelector::downstream_only()
                                      : ad::ParameterSelector::both();
}

ad::NamedTensors active_params(std::uint64_t step, const FreezeSchedule& schedule,
                               const ad::ParameterPartition& partition) {
  return ad::select(partition, active_params(step, schedule));
}

}  // namespace swce::training
