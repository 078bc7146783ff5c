// core/include/swce/autodiff/adam.h

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

#ifndef SWCE_AUTODIFF_ADAM_H_
#define SWCE_AUTODIFF_ADAM_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swce/autodiff/parameters.h"

namespace swce::ad {

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Optimizer state keyed by parameter name. Bias correction uses each
// parameter's own update count, so a block that was frozen for a while starts
// its moment estimates fresh when it is first released.
class AdamState {
 public:
  struct Moments {
    std::vector<double> first;
    std::vector<double> second;
    std::uint64_t updates = 0;
  };

  explicit AdamState(AdamConfig config = {});

  const AdamConfig& config() const { return config_; }
  // Number of adam_step calls so far.
  std::uint64_t step_count() const { return steps_; }
  const std::map<std::string, Moments>& moments() const { return moments_; }

 private:
  friend void adam_step(const NamedTensors&, AdamState&);
  AdamConfig config_;
  std::uint64_t steps_ = 0;
  std::map<std::string, Moments> moments_;
};

// Bias-corrected Adam update of exactly the listed parameters. Throws
// ContractError if one of them has no gradient.
void adam_step(const NamedTensors& active, AdamState& state);

// Updates the blocks of `partition` picked by `active`; the rest stay
// bitwise untouched.
void adam_step(const ParameterPartition& partition, ParameterSelector active,
               AdamState& state);

}  // namespace swce::ad

#endif  // SWCE_AUTODIFF_ADAM_H_
