// tools/experiment/include/swce/experiment/run.h

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

#ifndef SWCE_EXPERIMENT_RUN_H_
#define SWCE_EXPERIMENT_RUN_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "swce/experiment/config.h"
#include "swce/experiment/report.h"

namespace swce::experiment {

// Generates the large and small synthetic sets described by `settings`
// under `dir` (wav/ plus manifest.csv with train/dev/test assigned).
data::CorpusManifest generate_split_corpus(const CorpusSettings& settings,
                                           const std::filesystem::path& dir);

// Content-addressed corpus directory under `cache_dir`, generated on first
// use. Returns the directory holding manifest.csv.
std::filesystem::path cached_corpus(const CorpusSettings& settings,
                                    const std::filesystem::path& cache_dir);

struct RunOptions {
  std::filesystem::path out_dir = "out";
  // Replaces the config's seed list when set.
  std::optional<std::vector<std::uint64_t>> seeds;
  // Independent (row, seed) runs executed concurrently.
  std::size_t jobs = 1;
  bool verbose = true;
};

struct ExperimentOutcome {
  std::vector<RunResult> results;
  std::vector<ReportRow> rows;
};

// Validates the config, prepares (or reuses) the cached corpus and
// pretrained encoder, trains every model x loss x freeze_steps cell for
// every seed, and writes runs/, runs.txt, report.csv and report.md under
// out_dir.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const RunOptions& options);

}  // namespace swce::experiment

#endif  // SWCE_EXPERIMENT_RUN_H_
