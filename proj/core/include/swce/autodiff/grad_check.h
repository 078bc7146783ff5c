// core/include/swce/autodiff/grad_check.h

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

#ifndef SWCE_AUTODIFF_GRAD_CHECK_H_
#define SWCE_AUTODIFF_GRAD_CHECK_H_

#include <functional>
#include <span>
#include <string>

#include "swce/autodiff/parameters.h"

namespace swce::ad {

struct GradCheckResult {
  // max over entries of |analytic - numeric| / max(1, |analytic|)
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  std::size_t entries_checked = 0;
};

// Compares reverse-mode gradients of the scalar `loss_fn()` with central
// differences of step `eps` over every entry of every parameter. The
// parameters are restored bitwise afterwards and are left holding the
// analytic gradient.
//
// Throws ContractError if eps is outside (0, 1e-3] or if two evaluations at
// the same point disagree (non-deterministic loss).
GradCheckResult grad_check(const std::function<Tensor()>& loss_fn,
                           const NamedTensors& params, double eps = 1e-5);

}  // namespace swce::ad

#endif  // SWCE_AUTODIFF_GRAD_CHECK_H_
