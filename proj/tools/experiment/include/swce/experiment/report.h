// tools/experiment/include/swce/experiment/report.h

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

#ifndef SWCE_EXPERIMENT_REPORT_H_
#define SWCE_EXPERIMENT_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace swce::experiment {

// Outcome of one (row, seed) training run; accuracies as fractions.
struct RunResult {
  std::string pipeline;
  std::string model;
  std::string loss;
  std::uint64_t freeze_steps = 0;
  std::uint64_t seed = 0;
  double dev_accuracy = 0.0;
  double test_accuracy = 0.0;
  double test_margin = 0.0;
  std::size_t best_epoch = 0;
  std::uint64_t optimizer_steps = 0;
};

std::string result_json(const RunResult& r);
RunResult parse_result_json(const std::string& text);

// One report line: a (pipeline, model, loss, freeze_steps) cell aggregated
// over seeds. Accuracies in percent.
struct ReportRow {
  std::string pipeline;
  std::string model;
  std::string loss;
  std::uint64_t freeze_steps = 0;
  std::size_t seeds = 0;
  double dev_mean = 0.0;
  std::optional<double> dev_std;  // sample std, only with >= 2 seeds
  double test_mean = 0.0;
  std::optional<double> test_std;
  double margin_mean = 0.0;
  // Rounded dev mean minus rounded test mean, as printed.
  double gap = 0.0;
};

// Groups results by cell in first-appearance order.
std::vector<ReportRow> aggregate(const std::vector<RunResult>& results);

// Percent value rounded to two decimals.
double round2(double percent);

inline constexpr const char* kReportCsvHeader =
    "pipeline,model,loss,freeze_steps,dev_acc_mean,dev_acc_std,test_acc_mean,test_acc_std,gap";

std::string report_csv(const std::vector<ReportRow>& rows);
// Markdown table with a margin column and, for cells run with both losses,
// a CE versus SWCE comparison.
std::string report_markdown(const std::string& title, const std::vector<ReportRow>& rows);

// Writes report.csv and report.md into `dir`. Throws ContractError on no rows.
void emit_report(const std::filesystem::path& dir, const std::string& title,
                 const std::vector<ReportRow>& rows);

// Rebuilds the report of a finished run directory from its runs.txt index
// and the per-run result.json files.
void report_from_dir(const std::filesystem::path& dir);

}  // namespace swce::experiment

#endif  // SWCE_EXPERIMENT_REPORT_H_
