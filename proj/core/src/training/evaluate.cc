// core/src/training/evaluate.cc

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

#include "swce/training/evaluate.h"

#include <algorithm>
#include <cmath>

#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"

namespace swce::training {

DataSplit::DataSplit(std::string name, std::vector<Example> examples)
    : name_(std::move(name)), examples_(std::move(examples)) {}

const std::vector<Example>& DataSplit::examples() const {
  ++accesses_;
  return examples_;
}

EvalResult summarize(const std::vector<std::vector<double>>& probabilities,
                     const std::vector<std::size_t>& labels) {
  if (probabilities.empty() || probabilities.size() != labels.size())
    throw ContractError("summarize: need one non-empty probability row per label");
  EvalResult out;
  std::size_t correct = 0;
  double margin = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& p = probabilities[i];
    const std::size_t y = labels[i];
    if (p.size() != models::kNumClasses || y >= models::kNumClasses)
      throw ContractError("summarize: expected 3-class probabilities and labels");
    const std::size_t pred =
        static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    out.predictions.push_back(pred);
    out.confusion[y][pred] += 1;
    if (pred == y) ++correct;
    double rival = -1.0;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (j != y) rival = std::max(rival, p[j]);
    margin += p[y] - rival;
  }
  const double n = static_cast<double>(labels.size());
  out.accuracy = static_cast<double>(correct) / n;
  out.mean_margin = margin / n;
  return out;
}

EvalResult evaluate(const models::SequenceClassifier& model, const Frontend& frontend,
                    const DataSplit& split, std::size_t batch_size) {
  if (split.empty()) throw ContractError("evaluate: split '" + split.name() + "' is empty");
  if (batch_size == 0) throw ContractError("evaluate: batch size must be positive");
  const std::vector<Example>& examples = split.examples();
  std::vector<std::vector<double>> probs;
  std::vector<std::size_t> labels;
  probs.reserve(examples.size());
  for (std::size_t start = 0; start < examples.size(); start += batch_size) {
    const std::size_t end = std::min(examples.size(), start + batch_size);
    std::vector<Tensor> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(frontend(examples[i].input).detach());
      labels.push_back(examples[i].label);
    }
    const Tensor p = ad::softmax(model.forward(batch));
    const std::size_t c = p.cols();
    for (std::size_t b = 0; b < batch.size(); ++b) {
      auto row = p.values().subspan(b * c, c);
      probs.emplace_back(row.begin(), row.end());
    }
  }
  return summarize(probs, labels);
}

}  // namespace swce::training
