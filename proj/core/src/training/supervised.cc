// core/src/training/supervised.cc

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

#include "swce/training/supervised.h"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "swce/autodiff/adam.h"
#include "swce/common/errors.h"

namespace swce::training {

void TrainConfig::validate() const {
  if (!(lr > 0.0)) throw ConfigError("lr", fmt::format("must be positive, got {}", lr));
  if (batch_size == 0) throw ConfigError("batch_size", "must be at least 1");
  if (max_epochs == 0) throw ConfigError("max_epochs", "must be at least 1");
}

bool TrainHistory::operator==(const TrainHistory& o) const {
  auto same_eval = [](const EvalResult& a, const EvalResult& b) {
    return a.accuracy == b.accuracy && a.confusion == b.confusion &&
           a.mean_margin == b.mean_margin && a.predictions == b.predictions;
  };
  auto same_epochs = std::equal(
      epochs.begin(), epochs.end(), o.epochs.begin(), o.epochs.end(),
      [](const EpochRecord& a, const EpochRecord& b) {
        return a.epoch == b.epoch && a.train_loss == b.train_loss &&
               a.dev_accuracy == b.dev_accuracy && a.train_accuracy == b.train_accuracy;
      });
  auto same_steps = std::equal(steps.begin(), steps.end(), o.steps.begin(), o.steps.end(),
                               [](const StepRecord& a, const StepRecord& b) {
                                 return a.step == b.step && a.loss == b.loss;
                               });
  return same_epochs && same_steps && best_epoch == o.best_epoch &&
         best_dev_accuracy == o.best_dev_accuracy && same_eval(dev, o.dev) &&
         same_eval(test, o.test) && best_checkpoint == o.best_checkpoint &&
         optimizer_steps == o.optimizer_steps;
}

ad::ParameterPartition supervised_partition(const models::SequenceClassifier& model,
                                            const Frontend& frontend) {
  return ad::ParameterPartition(frontend.parameters(), model.parameters());
}

namespace {

// Frontend outputs memoized per input tensor while the frontend is frozen.
class CachedFrontend : public Frontend {
 public:
  explicit CachedFrontend(const Frontend& inner) : inner_(inner) {}

  void set_frozen(bool frozen) {
    frozen_ = frozen;
    if (!frozen_) cache_.clear();
  }

  Tensor operator()(const Tensor& input) const override {
    if (!frozen_) return inner_(input);
    auto it = cache_.find(input.node().get());
    if (it != cache_.end()) return it->second;
    Tensor t = inner_(input).detach();
    cache_.emplace(input.node().get(), t);
    return t;
  }
  ad::NamedTensors parameters() const override { return inner_.parameters(); }

 private:
  const Frontend& inner_;
  bool frozen_ = true;
  mutable std::unordered_map<const void*, Tensor> cache_;
};

}  // namespace

TrainHistory train_supervised(models::SequenceClassifier& model, const Frontend& frontend,
                              const Splits& splits, const TrainConfig& config) {
  config.validate();
  for (const DataSplit* s : {&splits.train, &splits.dev, &splits.test})
    if (s->empty()) throw ContractError("train_supervised: split '" + s->name() + "' is empty");

  const ad::ParameterPartition partition = supervised_partition(model, frontend);
  const ad::NamedTensors all = partition.all();
  const bool has_pretrained = !partition.pretrained().empty();
  ad::AdamState adam(ad::AdamConfig{.lr = config.lr});
  std::mt19937_64 rng(config.seed ^ 0x5eed5eedULL);
  CachedFrontend cached(frontend);
  // Identity frontends carry no parameters, so their outputs are fixed.
  auto frozen_at = [&](std::uint64_t s) {
    return !has_pretrained || !active_params(s, config.freeze).pretrained;
  };

  const std::vector<Example>& train = splits.train.examples();
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  TrainHistory history;
  std::uint64_t step = 0;
  std::size_t since_best = 0;
  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      cached.set_frozen(frozen_at(step));
      std::vector<Tensor> batch;
      std::vector<std::size_t> labels;
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(cached(train[order[i]].input));
        labels.push_back(train[order[i]].label);
      }
      const Tensor loss = losses::classification_loss(config.loss, model.forward(batch), labels);
      for (const auto& p : all) {
        Tensor t = p.tensor;
        t.zero_grad();
      }
      loss.backward();
      // Frozen-frontend features are detached, so pretrained tensors have no
      // gradient exactly when they are excluded from the update.
      ad::adam_step(partition, active_params(step, config.freeze), adam);
      history.steps.push_back({step, loss.item()});
      loss_sum += loss.item();
      ++batches;
      ++step;
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(batches);
    cached.set_frozen(frozen_at(step));
    record.dev_accuracy = evaluate(model, cached, splits.dev).accuracy;
    if (config.stop_on_perfect_train)
      record.train_accuracy = evaluate(model, cached, splits.train).accuracy;
    history.epochs.push_back(record);

    if (record.dev_accuracy > history.best_dev_accuracy) {
      history.best_dev_accuracy = record.dev_accuracy;
      history.best_epoch = epoch;
      history.best_checkpoint = models::snapshot(all);
      since_best = 0;
    } else {
      ++since_best;
    }
    if (config.stop_on_perfect_train && record.train_accuracy == 1.0) break;
    if (config.patience > 0 && since_best >= config.patience) break;
  }
  history.optimizer_steps = step;

  models::restore(all, history.best_checkpoint);
  history.dev = evaluate(model, frontend, splits.dev);
  history.test = evaluate(model, frontend, splits.test);
  return history;
}

}  // namespace swce::training
