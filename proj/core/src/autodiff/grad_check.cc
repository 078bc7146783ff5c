// core/src/autodiff/grad_check.cc

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

#include "swce/autodiff/grad_check.h"

#include <algorithm>
#include <cmath>

#include "swce/common/errors.h"

namespace swce::ad {

GradCheckResult grad_check(const std::function<Tensor()>& loss_fn,
                           const NamedTensors& params, double eps) {
  if (!(eps > 0.0) || eps > 1e-3)
    throw ContractError("grad_check: eps must lie in (0, 1e-3]");

  const double first = loss_fn().item();
  const double second = loss_fn().item();
  if (first != second && !(std::isnan(first) && std::isnan(second)))
    throw ContractError("grad_check: loss function is not deterministic");

  NamedTensors work = params;
  for (NamedTensor& p : work) p.tensor.zero_grad();
  loss_fn().backward();

  GradCheckResult result;
  for (NamedTensor& p : work) {
    std::vector<double> analytic(p.tensor.size(), 0.0);
    if (p.tensor.has_grad()) {
      auto g = p.tensor.grad();
      std::copy(g.begin(), g.end(), analytic.begin());
    }
    auto values = p.tensor.mutable_values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double original = values[i];
      values[i] = original + eps;
      const double plus = loss_fn().item();
      values[i] = original - eps;
      const double minus = loss_fn().item();
      values[i] = original;
      const double numeric = (plus - minus) / (2.0 * eps);
      const double err =
          std::abs(analytic[i] - numeric) / std::max(1.0, std::abs(analytic[i]));
      ++result.entries_checked;
      if (err > result.max_relative_error || std::isnan(err)) {
        result.max_relative_error = std::isnan(err) ? INFINITY : err;
        result.worst_parameter = p.name;
        result.worst_index = i;
      }
    }
  }
  return result;
}

}  // namespace swce::ad
