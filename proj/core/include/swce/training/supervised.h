// core/include/swce/training/supervised.h

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

#ifndef SWCE_TRAINING_SUPERVISED_H_
#define SWCE_TRAINING_SUPERVISED_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swce/losses/classification.h"
#include "swce/models/checkpoint.h"
#include "swce/training/evaluate.h"
#include "swce/training/freeze.h"

namespace swce::training {

struct TrainConfig {
  double lr = 1e-4;
  std::size_t batch_size = 8;
  std::size_t max_epochs = 30;
  // Stop after this many epochs without a dev improvement; 0 disables.
  std::size_t patience = 0;
  std::uint64_t seed = 0;
  losses::LossKind loss = losses::LossKind::kCrossEntropy;
  FreezeSchedule freeze;
  // Also score the training split after every epoch and stop once it is
  // classified perfectly.
  bool stop_on_perfect_train = false;

  // Throws ConfigError naming the field.
  void validate() const;
};

struct StepRecord {
  std::uint64_t step = 0;
  double loss = 0.0;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double dev_accuracy = 0.0;
  // Only filled with stop_on_perfect_train, otherwise negative.
  double train_accuracy = -1.0;
};

struct Splits {
  DataSplit train;
  DataSplit dev;
  DataSplit test;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::vector<StepRecord> steps;
  std::size_t best_epoch = 0;
  double best_dev_accuracy = -1.0;
  EvalResult dev;   // dev scores of the retained checkpoint
  EvalResult test;  // computed once, on the retained checkpoint
  models::Checkpoint best_checkpoint;
  std::uint64_t optimizer_steps = 0;

  bool operator==(const TrainHistory& other) const;
};

// Freeze-then-joint training of `model` on top of `frontend`.
//
// Every optimizer step back-propagates the batch loss and updates the
// parameters picked by active_params(step). While the frontend is frozen its
// outputs are cached per clip, since they cannot change. After each epoch the
// dev split is scored and the best (strictly improving) parameters are kept.
// At the end the best parameters are restored into model and frontend and the
// test split is scored exactly once.
//
// Throws ContractError on an empty split.
TrainHistory train_supervised(models::SequenceClassifier& model, const Frontend& frontend,
                              const Splits& splits, const TrainConfig& config);

// Partition used by train_supervised.
ad::ParameterPartition supervised_partition(const models::SequenceClassifier& model,
                                            const Frontend& frontend);

}  // namespace swce::training

#endif  // SWCE_TRAINING_SUPERVISED_H_
