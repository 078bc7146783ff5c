// tools/experiment/include/swce/experiment/config.h

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

#ifndef SWCE_EXPERIMENT_CONFIG_H_
#define SWCE_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "swce/data/corpus.h"
#include "swce/losses/classification.h"
#include "swce/training/freeze.h"
#include "swce/training/pretrain.h"

namespace swce::experiment {

enum class Pipeline { kHandcrafted, kToyW2v };
enum class ModelKind { kGru, kAcnn };

std::string_view pipeline_name(Pipeline p);
std::string_view model_name(ModelKind m);
std::string_view loss_name(losses::LossKind l);

struct CorpusSettings {
  std::uint64_t seed = 2022;
  data::ClassCounts large_counts = data::kLargeSetCounts;
  data::ClassCounts small_counts = data::kSmallSetCounts;
  double clip_seconds = 6.0;
  std::uint64_t split_seed = 7;

  // Canonical text used for the cache key.
  std::string canonical() const;
};

struct TrainingSettings {
  double lr = 1e-4;
  std::size_t batch_size = 8;
  std::size_t max_epochs = 30;
  std::size_t patience = 0;
};

struct PretrainSettings {
  bool enabled = true;
  // Seeds the encoder initialization as well as masking and sampling.
  training::PretrainConfig config;
  std::string canonical() const;
};

struct ExperimentConfig {
  std::string name = "experiment";
  Pipeline pipeline = Pipeline::kHandcrafted;
  std::vector<ModelKind> models = {ModelKind::kGru, ModelKind::kAcnn};
  std::vector<losses::LossKind> losses = {losses::LossKind::kCrossEntropy};
  std::vector<std::uint64_t> freeze_steps = {0};
  training::FreezeUnit freeze_unit = training::FreezeUnit::kSteps;
  std::vector<std::uint64_t> seeds = {1};
  CorpusSettings corpus;
  TrainingSettings training;
  PretrainSettings pretrain;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Sectioned key = value text:
//
//   [experiment]  name, pipeline, models, losses, freeze_steps, freeze_unit, seeds
//   [corpus]      seed, large_counts, small_counts, clip_seconds, split_seed
//   [training]    lr, batch_size, max_epochs, patience
//   [pretrain]    enabled, steps, batch_size, lr, crop_seconds, mask_prob,
//                 mask_span, temperature, num_distractors, diversity_weight,
//                 diversity_temperature, seed
//
// Lists are comma separated. Lines starting with '#' or ';' are comments.
// Every key is optional; unknown sections or keys, malformed values and
// out-of-enum values throw ConfigError naming "section.key".
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Comma-separated unsigned integers ("1,2,3"); throws ConfigError(field).
std::vector<std::uint64_t> parse_uint_list(std::string_view field, std::string_view text);

}  // namespace swce::experiment

#endif  // SWCE_EXPERIMENT_CONFIG_H_
