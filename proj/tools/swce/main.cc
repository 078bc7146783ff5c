// tools/swce/main.cc

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

#include <fmt/format.h>

#include <CLI11.hpp>
#include <exception>
#include <string>

#include "swce/common/errors.h"
#include "swce/experiment/config.h"
#include "swce/experiment/report.h"
#include "swce/experiment/run.h"

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kConfigFailure = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace swce;
  CLI::App app{"Soft-weighted cross-entropy experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", seeds_text;
  std::size_t jobs = 1;
  bool quiet = false;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config and write its report");
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--out", out_dir, "Output directory (default: out)");
  run->add_option("--seeds", seeds_text, "Comma-separated seeds, overriding the config");
  run->add_option("--jobs", jobs, "Concurrent runs (default: 1)");
  run->add_flag("--quiet", quiet, "No progress output");

  std::uint64_t corpus_seed = 0;
  std::string corpus_out;
  CLI::App* gen = app.add_subcommand("gen-corpus", "Generate the synthetic corpus");
  gen->add_option("--seed", corpus_seed, "Generator seed")->required();
  gen->add_option("--out", corpus_out, "Output directory")->required();

  std::string report_in;
  CLI::App* report = app.add_subcommand("report", "Rebuild report files of a finished run");
  report->add_option("--in", report_in, "Run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigFailure;
  }

  try {
    if (*run) {
      experiment::ExperimentConfig config = experiment::load_config(config_path);
      experiment::RunOptions options;
      options.out_dir = out_dir;
      options.jobs = jobs;
      options.verbose = !quiet;
      if (!seeds_text.empty()) options.seeds = experiment::parse_uint_list("--seeds", seeds_text);
      experiment::run_experiment(config, options);
      fmt::print("wrote {}/report.csv and {}/report.md\n", out_dir, out_dir);
    } else if (*gen) {
      experiment::CorpusSettings settings;
      settings.seed = corpus_seed;
      const data::CorpusManifest m = experiment::generate_split_corpus(settings, corpus_out);
      fmt::print("wrote {} clips and {}/manifest.csv\n", m.records.size(), corpus_out);
    } else if (*report) {
      experiment::report_from_dir(report_in);
      fmt::print("wrote {}/report.csv and {}/report.md\n", report_in, report_in);
    }
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigFailure;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kRuntimeFailure;
  }
  return 0;
}
