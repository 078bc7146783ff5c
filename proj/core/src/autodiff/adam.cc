// core/src/autodiff/adam.cc

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

#include "swce/autodiff/adam.h"

#include <cmath>

#include "swce/common/errors.h"

namespace swce::ad {

AdamState::AdamState(AdamConfig config) : config_(config) {
  if (!(config.lr > 0) || config.beta1 < 0 || config.beta1 >= 1 || config.beta2 < 0 ||
      config.beta2 >= 1 || !(config.eps > 0))
    throw ContractError("adam: invalid hyperparameters");
}

void adam_step(const NamedTensors& active, AdamState& state) {
  for (const NamedTensor& p : active)
    if (!p.tensor.has_grad())
      throw ContractError("adam: active parameter '" + p.name + "' has no gradient");

  ++state.steps_;
  const AdamConfig& c = state.config_;
  for (const NamedTensor& p : active) {
    Tensor param = p.tensor;
    auto values = param.mutable_values();
    auto grad = param.grad();
    AdamState::Moments& mom = state.moments_[p.name];
    if (mom.first.empty()) {
      mom.first.assign(values.size(), 0.0);
      mom.second.assign(values.size(), 0.0);
    }
    if (mom.first.size() != values.size())
      throw ContractError("adam: parameter '" + p.name + "' changed size");
    ++mom.updates;
    const double t = static_cast<double>(mom.updates);
    const double correct1 = 1.0 - std::pow(c.beta1, t);
    const double correct2 = 1.0 - std::pow(c.beta2, t);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double g = grad[i];
      mom.first[i] = c.beta1 * mom.first[i] + (1.0 - c.beta1) * g;
      mom.second[i] = c.beta2 * mom.second[i] + (1.0 - c.beta2) * g * g;
      const double m_hat = mom.first[i] / correct1;
      const double v_hat = mom.second[i] / correct2;
      values[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
    }
  }
}

void adam_step(const ParameterPartition& partition, ParameterSelector active,
               AdamState& state) {
  adam_step(select(partition, active), state);
}

}  // namespace swce::ad
