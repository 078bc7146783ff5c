// tests/unit/training_test.cc

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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "swce/autodiff/adam.h"
#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"
#include "swce/models/acnn.h"
#include "swce/models/gru.h"
#include "swce/training/freeze.h"
#include "swce/training/history.h"
#include "swce/training/pretrain.h"
#include "swce/training/supervised.h"
#include "testing.h"

namespace swce::training {
namespace {

using models::Rng;
using testing::random_constant;

// Trainable projection standing in for a pretrained encoder.
class LinearFrontend : public Frontend {
 public:
  LinearFrontend(std::size_t in, std::size_t out, Rng& rng) : layer_(in, out, rng) {}
  Tensor operator()(const Tensor& input) const override { return ad::tanh(layer_(input)); }
  ad::NamedTensors parameters() const override { return layer_.parameters("front"); }

 private:
  models::Linear layer_;
};

// Always the same logits, whatever the input.
class ConstantModel : public models::SequenceClassifier {
 public:
  explicit ConstantModel(std::size_t cls) : cls_(cls) {}
  Tensor forward(std::span<const Tensor> batch) const override {
    std::vector<double> v;
    for (std::size_t i = 0; i < batch.size(); ++i)
      for (std::size_t c = 0; c < 3; ++c) v.push_back(c == cls_ ? 2.0 : 0.0);
    return Tensor::constant({batch.size(), 3}, v);
  }
  ad::NamedTensors parameters() const override { return {}; }
  std::size_t input_dim() const override { return 2; }
  std::string name() const override { return "const"; }

 private:
  std::size_t cls_;
};

// Class-dependent Gaussian sequences: mean shift per class along the first
// columns.
DataSplit toy_split(const std::string& name, std::size_t per_class, std::size_t frames,
                    std::size_t dim, Rng& rng, double noise = 0.5) {
  std::normal_distribution<double> g(0.0, noise);
  std::vector<Example> ex;
  for (std::size_t i = 0; i < per_class; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      std::vector<double> v(frames * dim);
      for (std::size_t t = 0; t < frames; ++t)
        for (std::size_t d = 0; d < dim; ++d)
          v[t * dim + d] = g(rng) + (d == c ? 1.5 : 0.0);
      ex.push_back({name + std::to_string(ex.size()), Tensor::constant({frames, dim}, v), c});
    }
  }
  return DataSplit(name, std::move(ex));
}

Splits toy_splits(std::uint64_t seed, std::size_t per_class = 4, std::size_t frames = 5,
                  std::size_t dim = 4) {
  Rng rng(seed);
  return {toy_split("train", per_class, frames, dim, rng),
          toy_split("dev", 2, frames, dim, rng), toy_split("test", 2, frames, dim, rng)};
}

TEST(Freeze, ActiveParamsExamples) {
  using ad::ParameterSelector;
  EXPECT_EQ(active_params(0, {0}), ParameterSelector::both());
  EXPECT_EQ(active_params(999, {1000}), ParameterSelector::downstream_only());
  EXPECT_EQ(active_params(1000, {1000}), ParameterSelector::both());
  for (std::uint64_t n : {0u, 1u, 7u, 50u})
    for (std::uint64_t s = 0; s < 60; ++s)
      EXPECT_EQ(active_params(s, {n}).pretrained, s >= n);
}

TEST(Freeze, PartitionOverload) {
  Tensor a = Tensor::parameter({1}, {1});
  Tensor b = Tensor::parameter({1}, {2});
  ad::ParameterPartition p({{"a", a}}, {{"b", b}});
  EXPECT_EQ(active_params(3, {5}, p).size(), 1u);
  EXPECT_EQ(active_params(5, {5}, p).size(), 2u);
}

TEST(Freeze, UnitsAndParsing) {
  EXPECT_EQ(parse_freeze_unit("steps"), FreezeUnit::kSteps);
  EXPECT_EQ(parse_freeze_unit("epochs"), FreezeUnit::kEpochs);
  EXPECT_THROW(parse_freeze_unit("Epochs"), ConfigError);
  EXPECT_EQ(FreezeSchedule::from(1000, FreezeUnit::kSteps, 28).freeze_steps, 1000u);
  EXPECT_EQ(FreezeSchedule::from(3, FreezeUnit::kEpochs, 28).freeze_steps, 84u);
}

TEST(Evaluate, ConstantPredictorOnBalancedSplit) {
  Rng rng(1);
  DataSplit split = toy_split("dev", 5, 3, 2, rng);
  IdentityFrontend id;
  EvalResult r = evaluate(ConstantModel(1), id, split);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0 / 3.0);
  for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(r.confusion[t][1], 5u);
  EXPECT_EQ(split.access_count(), 1u);
}

TEST(Evaluate, EmptySplitThrows) {
  IdentityFrontend id;
  EXPECT_THROW(evaluate(ConstantModel(0), id, DataSplit("x", {})), ContractError);
}

TEST(Summarize, PerfectAndTraceIdentity) {
  std::vector<std::vector<double>> probs = {{0.7, 0.2, 0.1}, {0.1, 0.8, 0.1}, {0.2, 0.2, 0.6}};
  EvalResult perfect = summarize(probs, {0, 1, 2});
  EXPECT_EQ(perfect.accuracy, 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(perfect.confusion[i][j], i == j ? 1u : 0u);
  EXPECT_NEAR(perfect.mean_margin, (0.5 + 0.7 + 0.4) / 3.0, 1e-15);

  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> p;
    std::vector<std::size_t> y;
    for (int i = 0; i < 17; ++i) {
      p.push_back(testing::random_simplex(3, rng));
      y.push_back(rng() % 3);
    }
    EvalResult r = summarize(p, y);
    std::size_t trace = 0, total = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        total += r.confusion[i][j];
        if (i == j) trace += r.confusion[i][j];
      }
    EXPECT_EQ(total, 17u);
    EXPECT_DOUBLE_EQ(r.accuracy, static_cast<double>(trace) / total);
  }
}

TEST(Supervised, ConfigValidation) {
  EXPECT_THROW((TrainConfig{.lr = 0.0}.validate()), ConfigError);
  EXPECT_THROW((TrainConfig{.batch_size = 0}.validate()), ConfigError);
  try {
    TrainConfig{.lr = -1.0}.validate();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "lr");
  }
}

TEST(Supervised, EmptySplitThrows) {
  Rng rng(3);
  Splits s = toy_splits(3);
  s.dev = DataSplit("dev", {});
  models::BiGruClassifier gru({.input_dim = 4, .hidden_dim = 4}, rng);
  IdentityFrontend id;
  EXPECT_THROW(train_supervised(gru, id, s, {.max_epochs = 1}), ContractError);
}

TEST(Supervised, FreezeLongerThanTrainingKeepsPretrainedBlock) {
  Rng rng(4);
  Splits s = toy_splits(4);
  LinearFrontend front(4, 4, rng);
  models::BiGruClassifier gru({.input_dim = 4, .hidden_dim = 4}, rng);
  const std::string before = models::parameter_hash(front.parameters());
  const std::string down_before = models::parameter_hash(gru.parameters());
  TrainConfig cfg{.lr = 1e-2, .max_epochs = 3, .freeze = {1000}};
  TrainHistory h = train_supervised(gru, front, s, cfg);
  EXPECT_EQ(h.optimizer_steps, 6u);
  EXPECT_EQ(models::parameter_hash(front.parameters()), before);
  EXPECT_NE(models::parameter_hash(gru.parameters()), down_before);
}

TEST(Freeze, PretrainedHashConstantUntilRelease) {
  for (std::uint64_t n : {0u, 3u, 6u}) {
    Rng rng(5);
    Splits s = toy_splits(5);
    LinearFrontend front(4, 4, rng);
    models::BiGruClassifier gru({.input_dim = 4, .hidden_dim = 4}, rng);
    ad::ParameterPartition partition = supervised_partition(gru, front);
    ad::AdamState state(ad::AdamConfig{.lr = 1e-2});
    const auto& ex = s.train.examples();
    std::string hash = models::parameter_hash(partition.pretrained());
    for (std::uint64_t step = 0; step <= n; ++step) {
      for (auto& p : partition.all()) p.tensor.zero_grad();
      std::vector<Tensor> batch;
      std::vector<std::size_t> y;
      for (std::size_t i = 0; i < 4; ++i) {
        batch.push_back(front(ex[(step * 4 + i) % ex.size()].input));
        y.push_back(ex[(step * 4 + i) % ex.size()].label);
      }
      losses::cross_entropy(gru.forward(batch), y).backward();
      ad::adam_step(partition, active_params(step, {n}), state);
      std::string now = models::parameter_hash(partition.pretrained());
      if (step < n)
        EXPECT_EQ(now, hash) << "N " << n << " step " << step;
      else
        EXPECT_NE(now, hash) << "N " << n << " step " << step;
    }
  }
}

TEST(Supervised, TestSplitReadOnceAndHistoryShape) {
  Rng rng(6);
  Splits s = toy_splits(6);
  models::AcnnClassifier acnn({.input_dim = 4, .channels = 6, .hidden_dim = 4}, rng);
  Splits long_s = toy_splits(6, 4, acnn.min_frames() + 3);
  IdentityFrontend id;
  TrainHistory h = train_supervised(acnn, id, long_s, {.lr = 1e-2, .max_epochs = 4});
  EXPECT_EQ(long_s.test.access_count(), 1u);
  EXPECT_EQ(h.epochs.size(), 4u);
  EXPECT_EQ(h.steps.size(), h.optimizer_steps);
  for (const auto& e : h.epochs) {
    EXPECT_GE(e.dev_accuracy, 0.0);
    EXPECT_LE(e.dev_accuracy, 1.0);
  }
  EXPECT_EQ(h.best_dev_accuracy, h.epochs[h.best_epoch].dev_accuracy);
  EXPECT_EQ(h.dev.accuracy, h.best_dev_accuracy);
  EXPECT_EQ(models::snapshot(acnn.parameters()), h.best_checkpoint);
}

TEST(Supervised, DeterministicForIdenticalSeeds) {
  auto run = [] {
    Rng rng(7);
    Splits s = toy_splits(7);
    LinearFrontend front(4, 4, rng);
    models::BiGruClassifier gru({.input_dim = 4, .hidden_dim = 4}, rng);
    return train_supervised(gru, front, s,
                            {.lr = 1e-2, .max_epochs = 3, .seed = 11,
                             .loss = losses::LossKind::kSoftWeighted, .freeze = {2}});
  };
  EXPECT_TRUE(run() == run());
}

TEST(Supervised, OverfitsTinyCorpus) {
  Rng rng(8);
  Splits s = toy_splits(8, 8, 6, 4);
  models::BiGruClassifier gru({.input_dim = 4, .hidden_dim = 8}, rng);
  IdentityFrontend id;
  TrainHistory h = train_supervised(
      gru, id, s, {.lr = 1e-2, .max_epochs = 200, .stop_on_perfect_train = true});
  ASSERT_FALSE(h.epochs.empty());
  EXPECT_EQ(h.epochs.back().train_accuracy, 1.0);
}

TEST(History, JsonlRoundTrip) {
  TrainHistory h;
  h.steps = {{0, 1.25}, {1, 0.5}};
  h.epochs = {{0, 0.875, 0.5, -1.0}, {1, 0.25, 0.75, 1.0}};
  std::string text = history_jsonl(h);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  std::istringstream in(text);
  TrainHistory back = read_history(in);
  ASSERT_EQ(back.steps.size(), 2u);
  EXPECT_EQ(back.steps[1].loss, 0.5);
  ASSERT_EQ(back.epochs.size(), 2u);
  EXPECT_EQ(back.epochs[1].dev_accuracy, 0.75);
  EXPECT_EQ(back.epochs[1].train_accuracy, 1.0);
  EXPECT_EQ(back.epochs[0].train_accuracy, -1.0);
  std::istringstream bad("{\"step\":0\n");
  EXPECT_THROW(read_history(bad), FormatError);
}

models::W2vEncoderConfig tiny_encoder() {
  models::W2vEncoderConfig c;
  c.dim = 8;
  c.conv_strides = {2, 2};
  c.transformer_layers = 1;
  c.ffn_dim = 8;
  c.position_kernel = 3;
  c.codebook_size = 8;
  c.pool_steps = 2;
  return c;
}

std::vector<Tensor> tone_waves(std::size_t n, std::size_t samples) {
  std::vector<Tensor> w;
  for (std::size_t i = 0; i < n; ++i) {
    auto s = testing::sine(300.0 + 200.0 * i, samples, 0.4);
    w.push_back(Tensor::constant({samples, 1}, s));
  }
  return w;
}

PretrainConfig tiny_pretrain() {
  PretrainConfig c;
  c.steps = 5;
  c.batch_size = 2;
  c.crop_samples = 400;
  c.mask = {.prob = 0.1, .span = 3};
  c.contrastive.num_distractors = 4;
  c.seed = 3;
  return c;
}

TEST(Pretrain, DeterministicFiniteTrace) {
  auto run = [] {
    Rng rng(9);
    models::ToyW2vEncoder enc(tiny_encoder(), rng);
    auto waves = tone_waves(3, 800);
    return pretrain_selfsupervised(enc, waves, tiny_pretrain()).loss_trace;
  };
  auto a = run();
  ASSERT_EQ(a.size(), 5u);
  for (double v : a) EXPECT_TRUE(std::isfinite(v));
  EXPECT_EQ(a, run());
}

TEST(Pretrain, SkipsShortUtterances) {
  Rng rng(10);
  models::ToyW2vEncoder enc(tiny_encoder(), rng);
  auto waves = tone_waves(2, 800);
  waves.push_back(Tensor::constant({8, 1}, std::vector<double>(8, 0.1)));
  EXPECT_EQ(pretrain_selfsupervised(enc, waves, tiny_pretrain()).skipped, 1u);
  std::vector<Tensor> only_short = {waves.back()};
  EXPECT_THROW(pretrain_selfsupervised(enc, only_short, tiny_pretrain()), ContractError);
}

TEST(Pretrain, MaskedPredictionBookkeeping) {
  Rng rng(11);
  models::ToyW2vEncoder enc(tiny_encoder(), rng);
  Rng mask_rng(1);
  auto waves = tone_waves(1, 800);
  MaskedPrediction m = masked_prediction(enc, waves[0], tiny_pretrain(),
                                         models::QuantizerGradient::kCodebookOnly, mask_rng);
  EXPECT_GE(m.masked_steps, 3u);
  EXPECT_LE(m.scored_steps, m.masked_steps);
  EXPECT_LE(m.retrieved, m.scored_steps);
  EXPECT_LE(m.chance_hits, static_cast<double>(m.scored_steps));
}

TEST(Pretrain, ConfigValidationNamesField) {
  PretrainConfig c;
  c.mask.prob = 1.5;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "pretrain.mask_prob");
  }
}

}  // namespace
}  // namespace swce::training
