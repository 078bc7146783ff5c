// tools/experiment/src/run.cc

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

#include "swce/experiment/run.h"

#include <fmt/format.h>

#include <atomic>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <thread>

#include "swce/common/errors.h"
#include "swce/common/hash.h"
#include "swce/data/split.h"
#include "swce/models/acnn.h"
#include "swce/models/checkpoint.h"
#include "swce/models/gru.h"
#include "swce/training/dataset.h"
#include "swce/training/history.h"

namespace swce::experiment {

namespace fs = std::filesystem;

namespace {

std::mutex log_mutex;

template <typename... Args>
void log(bool verbose, fmt::format_string<Args...> format, Args&&... args) {
  if (!verbose) return;
  std::lock_guard<std::mutex> lock(log_mutex);
  fmt::print(stderr, format, std::forward<Args>(args)...);
  fmt::print(stderr, "\n");
}

std::string short_hash(const std::string& text) { return sha256_hex(text).substr(0, 16); }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

models::W2vEncoderConfig encoder_config() { return {}; }

std::string encoder_canonical(const models::W2vEncoderConfig& c) {
  return fmt::format("w2v-v1 dim={} strides={} layers={} heads={} ffn={} pos={} codes={} pool={}",
                     c.dim, fmt::join(c.conv_strides, "/"), c.transformer_layers, c.heads,
                     c.ffn_dim, c.position_kernel, c.codebook_size, c.pool_steps);
}

// Encoder parameters after (optional) self-supervised pretraining on the
// train split, cached by content.
models::Checkpoint pretrained_encoder(const ExperimentConfig& config,
                                      const training::Splits& waveforms,
                                      const fs::path& cache_dir, bool verbose) {
  const models::W2vEncoderConfig enc_config = encoder_config();
  const std::string key = short_hash(config.corpus.canonical() + "\n" +
                                     config.pretrain.canonical() + "\n" +
                                     encoder_canonical(enc_config));
  const fs::path path = cache_dir / fmt::format("encoder-{}.ckpt", key);
  if (fs::exists(path)) {
    log(verbose, "reusing pretrained encoder {}", path.string());
    return models::load_checkpoint(path);
  }
  models::Rng rng(config.pretrain.config.seed ^ 0xe2c0de5ULL);
  models::ToyW2vEncoder encoder(enc_config, rng);
  if (config.pretrain.enabled) {
    std::vector<ad::Tensor> clips;
    for (const auto& ex : waveforms.train.examples()) clips.push_back(ex.input);
    log(verbose, "pretraining encoder: {} steps on {} clips", config.pretrain.config.steps,
        clips.size());
    const training::PretrainResult r =
        training::pretrain_selfsupervised(encoder, clips, config.pretrain.config);
    log(verbose, "pretraining done: loss {:.4f} -> {:.4f}", r.loss_trace.front(),
        r.loss_trace.back());
  }
  models::Checkpoint checkpoint = models::snapshot(encoder.parameters());
  fs::create_directories(cache_dir);
  const fs::path tmp = path.string() + ".tmp";
  models::save_checkpoint(tmp, checkpoint);
  fs::rename(tmp, path);
  return checkpoint;
}

struct Task {
  ModelKind model;
  losses::LossKind loss;
  std::uint64_t freeze_steps;
  std::uint64_t seed;
  std::string dir;  // relative to out_dir
};

RunResult run_one(const ExperimentConfig& config, const Task& task,
                  const training::Splits& shared, const models::Checkpoint* encoder_state,
                  const fs::path& out_dir) {
  models::Rng rng(task.seed);
  std::unique_ptr<models::ToyW2vEncoder> encoder;
  std::unique_ptr<training::Frontend> frontend;
  std::size_t input_dim = features::kFeatureDim;
  if (config.pipeline == Pipeline::kToyW2v) {
    models::Rng scratch(0);
    encoder = std::make_unique<models::ToyW2vEncoder>(encoder_config(), scratch);
    models::restore(encoder->parameters(), *encoder_state);
    frontend = std::make_unique<training::EncoderFrontend>(*encoder);
    input_dim = encoder->config().dim;
  } else {
    frontend = std::make_unique<training::IdentityFrontend>();
  }

  std::unique_ptr<models::SequenceClassifier> model;
  if (task.model == ModelKind::kGru) {
    models::BiGruConfig c;
    c.input_dim = input_dim;
    model = std::make_unique<models::BiGruClassifier>(c, rng);
  } else {
    models::AcnnConfig c;
    c.input_dim = input_dim;
    model = std::make_unique<models::AcnnClassifier>(c, rng);
  }

  training::Splits splits = shared;
  training::TrainConfig tc;
  tc.lr = config.training.lr;
  tc.batch_size = config.training.batch_size;
  tc.max_epochs = config.training.max_epochs;
  tc.patience = config.training.patience;
  tc.seed = task.seed;
  tc.loss = task.loss;
  const std::uint64_t steps_per_epoch =
      (splits.train.size() + tc.batch_size - 1) / tc.batch_size;
  tc.freeze = training::FreezeSchedule::from(task.freeze_steps, config.freeze_unit,
                                             steps_per_epoch);
  const training::TrainHistory history = training::train_supervised(*model, *frontend, splits, tc);
  if (splits.test.access_count() != 1)
    throw std::logic_error("test split was read more than once");

  RunResult r;
  r.pipeline = std::string(pipeline_name(config.pipeline));
  r.model = std::string(model_name(task.model));
  r.loss = std::string(loss_name(task.loss));
  r.freeze_steps = task.freeze_steps;
  r.seed = task.seed;
  r.dev_accuracy = history.dev.accuracy;
  r.test_accuracy = history.test.accuracy;
  r.test_margin = history.test.mean_margin;
  r.best_epoch = history.best_epoch;
  r.optimizer_steps = history.optimizer_steps;

  const fs::path dir = out_dir / task.dir;
  fs::create_directories(dir);
  write_file(dir / "history.jsonl", training::history_jsonl(history));
  write_file(dir / "result.json", result_json(r));
  return r;
}

}  // namespace

data::CorpusManifest generate_split_corpus(const CorpusSettings& settings, const fs::path& dir) {
  data::CorpusSpec large;
  large.counts = settings.large_counts;
  large.clip_seconds = settings.clip_seconds;
  large.seed = settings.seed;
  large.id_prefix = "large";
  data::CorpusSpec small = large;
  small.counts = settings.small_counts;
  small.seed = settings.seed ^ 0x5a11ULL;
  small.id_prefix = "small";
  small.split = data::Split::kTest;
  const data::CorpusManifest lm = data::generate_corpus(large, dir);
  const data::CorpusManifest sm = data::generate_corpus(small, dir);
  data::CorpusManifest manifest = data::split_corpus(lm, sm, settings.split_seed);
  manifest.validate(dir);
  data::write_manifest(dir / "manifest.csv", manifest);
  return manifest;
}

fs::path cached_corpus(const CorpusSettings& settings, const fs::path& cache_dir) {
  const fs::path dir = cache_dir / fmt::format("corpus-{}", short_hash(settings.canonical()));
  if (fs::exists(dir / "manifest.csv")) return dir;
  const fs::path tmp = dir.string() + ".tmp";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  generate_split_corpus(settings, tmp);
  fs::remove_all(dir);
  fs::rename(tmp, dir);
  return dir;
}

ExperimentOutcome run_experiment(const ExperimentConfig& base, const RunOptions& options) {
  ExperimentConfig config = base;
  if (options.seeds) config.seeds = *options.seeds;
  config.validate();
  if (options.jobs == 0) throw ConfigError("jobs", "must be at least 1");

  const fs::path out = options.out_dir;
  const fs::path cache = out / "cache";
  fs::create_directories(cache);

  const fs::path corpus_dir = cached_corpus(config.corpus, cache);
  log(options.verbose, "corpus: {}", corpus_dir.string());
  const data::CorpusManifest manifest = data::read_manifest(corpus_dir / "manifest.csv");
  const std::vector<training::Clip> clips = training::load_clips(manifest, corpus_dir);

  training::Splits shared;
  std::optional<models::Checkpoint> encoder_state;
  if (config.pipeline == Pipeline::kHandcrafted) {
    shared = training::handcrafted_splits(clips);
  } else {
    shared = training::waveform_splits(clips);
    encoder_state = pretrained_encoder(config, shared, cache, options.verbose);
  }

  std::vector<Task> tasks;
  for (ModelKind m : config.models)
    for (losses::LossKind l : config.losses)
      for (std::uint64_t n : config.freeze_steps)
        for (std::uint64_t s : config.seeds)
          tasks.push_back({m, l, n, s,
                           fmt::format("runs/{}-{}-{}-N{}/seed-{}", pipeline_name(config.pipeline),
                                       model_name(m), loss_name(l), n, s)});

  std::vector<RunResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      try {
        log(options.verbose, "[{}/{}] {}", i + 1, tasks.size(), tasks[i].dir);
        results[i] = run_one(config, tasks[i], shared,
                             encoder_state ? &*encoder_state : nullptr, out);
        log(options.verbose, "[{}/{}] dev {:.4f} test {:.4f}", i + 1, tasks.size(),
            results[i].dev_accuracy, results[i].test_accuracy);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(options.jobs, tasks.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::string index = config.name + "\n";
  for (const Task& t : tasks) index += t.dir + "\n";
  write_file(out / "runs.txt", index);

  ExperimentOutcome outcome;
  outcome.results = std::move(results);
  outcome.rows = aggregate(outcome.results);
  emit_report(out, config.name, outcome.rows);
  return outcome;
}

}  // namespace swce::experiment
