// tests/unit/models_test.cc

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

#include <gtest/gtest.h>

#include "swce/autodiff/grad_check.h"
#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"
#include "swce/losses/classification.h"
#include "swce/losses/contrastive.h"
#include "swce/models/acnn.h"
#include "swce/models/checkpoint.h"
#include "swce/models/gru.h"
#include "swce/models/w2v_encoder.h"
#include "testing.h"

namespace swce::models {
namespace {

using testing::random_constant;

std::vector<double> as_vector(const Tensor& t) {
  return {t.values().begin(), t.values().end()};
}

std::vector<Tensor> random_batch(std::size_t n, std::size_t frames, std::size_t dim, Rng& rng) {
  std::vector<Tensor> batch;
  for (std::size_t i = 0; i < n; ++i) batch.push_back(random_constant({frames, dim}, rng));
  return batch;
}

W2vEncoderConfig small_encoder() {
  W2vEncoderConfig c;
  c.dim = 8;
  c.conv_strides = {2, 2};
  c.transformer_layers = 1;
  c.heads = 2;
  c.ffn_dim = 8;
  c.position_kernel = 3;
  c.codebook_size = 6;
  c.pool_steps = 2;
  return c;
}

TEST(Gru, ZeroWeightsKeepZeroState) {
  Rng rng(1);
  GruCell cell(4, 3, rng);
  for (auto& p : cell.parameters("c"))
    std::fill(p.tensor.mutable_values().begin(), p.tensor.mutable_values().end(), 0.0);
  Tensor h = cell.step(random_constant({2, 4}, rng), Tensor::zeros({2, 3}));
  for (double v : h.values()) EXPECT_EQ(v, 0.0);
}

TEST(Gru, StepwiseEqualsBatchedRun) {
  Rng rng(2);
  GruCell cell(5, 4, rng);
  std::vector<Tensor> steps;
  for (int t = 0; t < 7; ++t) steps.push_back(random_constant({3, 5}, rng));
  auto batched = cell.run(steps);
  Tensor h = Tensor::zeros({3, 4});
  for (std::size_t t = 0; t < steps.size(); ++t) {
    h = cell.step(steps[t], h);
    EXPECT_EQ(as_vector(h), as_vector(batched[t])) << t;
  }
}

TEST(Gru, CellMatchesGateEquations) {
  Rng rng(3);
  GruCell cell(2, 2, rng);
  Tensor x = random_constant({1, 2}, rng);
  Tensor h = random_constant({1, 2}, rng);
  auto W = as_vector(cell.w_input), U = as_vector(cell.u_gates);
  auto Uh = as_vector(cell.u_candidate), b = as_vector(cell.bias);
  auto xv = as_vector(x), hv = as_vector(h);
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  std::vector<double> z(2), r(2), out(2);
  for (int j = 0; j < 2; ++j) {
    double az = b[j], ar = b[2 + j];
    for (int i = 0; i < 2; ++i) {
      az += xv[i] * W[i * 6 + j] + hv[i] * U[i * 4 + j];
      ar += xv[i] * W[i * 6 + 2 + j] + hv[i] * U[i * 4 + 2 + j];
    }
    z[j] = sig(az);
    r[j] = sig(ar);
  }
  for (int j = 0; j < 2; ++j) {
    double a = b[4 + j];
    for (int i = 0; i < 2; ++i) a += xv[i] * W[i * 6 + 4 + j] + r[i] * hv[i] * Uh[i * 2 + j];
    out[j] = (1 - z[j]) * hv[j] + z[j] * std::tanh(a);
  }
  auto got = as_vector(cell.step(x, h));
  for (int j = 0; j < 2; ++j) EXPECT_NEAR(got[j], out[j], 1e-14);
}

TEST(Gru, DimensionMismatch) {
  Rng rng(4);
  GruCell cell(4, 3, rng);
  EXPECT_THROW(cell.step(random_constant({1, 5}, rng), Tensor::zeros({1, 3})), DimensionError);
  EXPECT_THROW(cell.run({}), ContractError);
}

TEST(BiGru, LogitShapeAndEmptyBatch) {
  Rng rng(5);
  BiGruClassifier gru({}, rng);
  auto batch = random_batch(8, 6, 38, rng);
  Tensor logits = gru.forward(batch);
  EXPECT_EQ(logits.shape(), (Shape{8, 3}));
  EXPECT_THROW(gru.forward(std::vector<Tensor>{}), ContractError);
  EXPECT_THROW(gru.forward(random_batch(1, 0, 38, rng)), ContractError);
}

TEST(BiGru, TiedDirectionsSwapUnderTimeReversal) {
  Rng rng(6);
  BiGruClassifier gru({.input_dim = 4, .hidden_dim = 3, .num_layers = 1,
                       .tied_directions = true}, rng);
  Tensor x = random_constant({5, 4}, rng);
  Tensor xr = ad::reverse_rows(x);
  auto a = as_vector(gru.encode(std::vector<Tensor>{x}));
  auto b = as_vector(gru.encode(std::vector<Tensor>{xr}));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i], b[3 + i]);
    EXPECT_EQ(a[3 + i], b[i]);
  }
  // A single frame gives identical states in both directions.
  auto one = as_vector(gru.encode(std::vector<Tensor>{ad::slice_rows(x, 0, 1)}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(one[i], one[3 + i]);
}

TEST(BiGru, MixedLengthsMatchSingles) {
  Rng rng(7);
  BiGruClassifier gru({.input_dim = 3, .hidden_dim = 4}, rng);
  std::vector<Tensor> batch = {random_constant({4, 3}, rng), random_constant({6, 3}, rng)};
  Tensor both = gru.forward(batch);
  for (std::size_t i = 0; i < 2; ++i) {
    Tensor single = gru.forward(std::span(&batch[i], 1));
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(both.at(i, c), single.at(0, c));
  }
}

TEST(BiGru, GradCheckOverTenSeeds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    BiGruClassifier gru({.input_dim = 3, .hidden_dim = 3, .num_layers = 2}, rng);
    auto batch = random_batch(2, 4, 3, rng);
    std::vector<std::size_t> y = {0, 2};
    auto r = ad::grad_check([&] { return losses::cross_entropy(gru.forward(batch), y); },
                            gru.parameters());
    EXPECT_LT(r.max_relative_error, 1e-4) << seed << " " << r.worst_parameter;
  }
}

TEST(Acnn, ShapeAttentionAndMinimumLength) {
  Rng rng(8);
  AcnnClassifier acnn({}, rng);
  auto batch = random_batch(3, 29, 38, rng);
  EXPECT_EQ(acnn.forward(batch).shape(), (Shape{3, 3}));
  for (const auto& w : acnn.last_attention()) {
    double total = 0.0;
    for (double v : w) total += v;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  const std::size_t m = acnn.min_frames();
  EXPECT_NO_THROW(acnn.forward(random_batch(1, m, 38, rng)));
  try {
    acnn.forward(random_batch(1, m - 1, 38, rng));
    FAIL();
  } catch (const TooShortError& e) {
    EXPECT_NE(std::string(e.what()).find(std::to_string(m)), std::string::npos);
  }
}

TEST(Acnn, MinimumLengthSurvivesConvStack) {
  Rng rng(9);
  AcnnClassifier acnn({}, rng);
  // kernel 5, stride 2, padding 1, three layers
  auto survives = [](std::size_t n) {
    for (int i = 0; i < 3; ++i) {
      if (n + 2 < 5) return false;
      n = (n + 2 - 5) / 2 + 1;
    }
    return true;
  };
  std::size_t expected = 1;
  while (!survives(expected)) ++expected;
  EXPECT_EQ(acnn.min_frames(), expected);
}

TEST(Acnn, UniformEmbeddingsPoolToThatEmbedding) {
  Rng rng(10);
  AcnnClassifier acnn({.input_dim = 4, .channels = 5}, rng);
  std::vector<double> row = {0.3, -1.2, 0.7, 2.0, 0.1};
  std::vector<double> frames;
  for (int t = 0; t < 9; ++t) frames.insert(frames.end(), row.begin(), row.end());
  std::vector<double> weights;
  Tensor pooled = acnn.attention_pool(Tensor::constant({9, 5}, frames), &weights);
  for (double w : weights) EXPECT_NEAR(w, 1.0 / 9.0, 1e-15);
  for (std::size_t c = 0; c < 5; ++c) EXPECT_NEAR(pooled.at(0, c), row[c], 1e-14);
}

TEST(Acnn, AttentionIsADistributionForRandomInputs) {
  Rng rng(11);
  AcnnClassifier acnn({.input_dim = 6, .channels = 8}, rng);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> w;
    acnn.attention_pool(random_constant({3 + trial, 8}, rng, 10.0), &w);
    double total = 0.0;
    for (double v : w) {
      EXPECT_GE(v, 0.0);
      total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Acnn, GradCheckOverTenSeeds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    AcnnClassifier acnn({.input_dim = 3, .channels = 4, .hidden_dim = 3}, rng);
    auto batch = random_batch(2, acnn.min_frames() + 2, 3, rng);
    std::vector<std::size_t> y = {1, 0};
    auto r = ad::grad_check([&] { return losses::cross_entropy(acnn.forward(batch), y); },
                            acnn.parameters());
    EXPECT_LT(r.max_relative_error, 1e-4) << seed << " " << r.worst_parameter;
  }
}

TEST(W2v, StepCounts) {
  Rng rng(12);
  ToyW2vEncoder enc({}, rng);
  EXPECT_EQ(enc.config().total_stride(), 320u);
  auto wave = [&](std::size_t n) { return random_constant({n, 1}, rng, 0.5); };
  EXPECT_EQ(enc.encode_local(wave(320)).shape(), (Shape{1, 32}));
  EXPECT_EQ(enc.encode_local(wave(3200)).shape(), (Shape{10, 32}));
  EXPECT_EQ(enc.encode_local(wave(3519)).rows(), 10u);
  EXPECT_THROW(enc.encode_local(wave(319)), TooShortError);
  EXPECT_EQ(enc.features(wave(6400)).shape(), (Shape{2, 32}));
  EXPECT_THROW(enc.features(wave(enc.min_feature_samples() - 1)), TooShortError);
}

TEST(W2v, DeterministicLatents) {
  Rng rng(13);
  ToyW2vEncoder enc({}, rng);
  Tensor w = random_constant({1600, 1}, rng, 0.5);
  EXPECT_EQ(as_vector(enc.encode_local(w)), as_vector(enc.encode_local(w)));
}

TEST(W2v, QuantizeExamples) {
  Rng rng(14);
  ToyW2vEncoder enc({}, rng);
  Tensor cb = enc.codebook();
  const std::size_t d = 32;
  auto row = [&](std::size_t r) {
    return std::vector<double>(cb.values().begin() + r * d, cb.values().begin() + (r + 1) * d);
  };
  Quantized q = enc.quantize(Tensor::constant({1, d}, row(7)));
  EXPECT_EQ(q.indices[0], 7u);
  EXPECT_EQ(as_vector(q.vectors), row(7));

  auto values = cb.mutable_values();
  std::fill(values.begin(), values.end(), 100.0);
  for (std::size_t k = 0; k < d; ++k) {
    values[2 * d + k] = k == 0 ? 1.0 : 0.0;
    values[5 * d + k] = k == 0 ? -1.0 : 0.0;
  }
  EXPECT_EQ(enc.quantize(Tensor::zeros({1, d})).indices[0], 2u);
}

TEST(W2v, QuantizeAgreesWithExhaustiveSearch) {
  Rng rng(15);
  ToyW2vEncoder enc({}, rng);
  Tensor z = random_constant({1000, 32}, rng, 0.3);
  Quantized q = enc.quantize(z);
  auto cb = enc.codebook().values();
  for (std::size_t t = 0; t < 1000; ++t) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < 64; ++r) {
      double dist = 0.0;
      for (std::size_t k = 0; k < 32; ++k) {
        double diff = z.at(t, k) - cb[r * 32 + k];
        dist += diff * diff;
      }
      if (dist < best_d) best_d = dist, best = r;
    }
    ASSERT_EQ(q.indices[t], best) << t;
    for (std::size_t k = 0; k < 32; ++k) EXPECT_EQ(q.vectors.at(t, k), cb[best * 32 + k]);
  }
}

TEST(W2v, StraightThroughRoutesGradientToLatents) {
  Rng rng(16);
  ToyW2vEncoder enc(small_encoder(), rng);
  Tensor z = testing::random_parameter({3, 8}, rng);
  ad::sum(enc.quantize(z).vectors).backward();
  for (double g : z.grad()) EXPECT_EQ(g, 1.0);
  Tensor z2 = testing::random_parameter({3, 8}, rng);
  ad::sum(enc.quantize(z2, QuantizerGradient::kCodebookOnly).vectors).backward();
  EXPECT_FALSE(z2.has_grad() && std::any_of(z2.grad().begin(), z2.grad().end(),
                                            [](double g) { return g != 0.0; }));
}

TEST(W2v, MaskingExamples) {
  Rng rng(17);
  ToyW2vEncoder enc({}, rng);
  Tensor z = random_constant({20, 32}, rng);
  Rng mask_rng(5);
  MaskedLatents none = enc.mask_time_steps(z, {.prob = 0.0, .span = 4}, mask_rng);
  auto steps = none.masked_steps();
  ASSERT_EQ(steps.size(), 4u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(steps[i], steps[0] + i);

  MaskedLatents all = enc.mask_time_steps(z, {.prob = 1.0, .span = 4}, mask_rng);
  EXPECT_EQ(all.masked_steps().size(), 20u);

  MaskedLatents some = enc.mask_time_steps(z, {.prob = 0.2, .span = 4}, mask_rng);
  auto emb = as_vector(enc.mask_embedding());
  for (std::size_t t = 0; t < 20; ++t)
    for (std::size_t k = 0; k < 32; ++k)
      EXPECT_EQ(some.latents.at(t, k), some.mask[t] ? emb[k] : z.at(t, k));

  EXPECT_THROW(enc.mask_time_steps(random_constant({3, 32}, rng), {}, mask_rng), ContractError);
}

TEST(W2v, MaskingIsSeeded) {
  Rng rng(18);
  ToyW2vEncoder enc({}, rng);
  Tensor z = random_constant({50, 32}, rng);
  Rng a(9), b(9);
  EXPECT_EQ(enc.mask_time_steps(z, {}, a).mask, enc.mask_time_steps(z, {}, b).mask);
}

TEST(W2v, GradCheckOverTenSeeds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    ToyW2vEncoder enc(small_encoder(), rng);
    Tensor wave = random_constant({48, 1}, rng, 0.5);
    auto loss = [&] {
      Rng mask_rng(seed + 100);
      Tensor z = enc.encode_local(wave);
      MaskedLatents m = enc.mask_time_steps(z, {.prob = 0.3, .span = 2}, mask_rng);
      Tensor c = enc.contextualize(m.latents);
      Quantized q = enc.quantize(z, QuantizerGradient::kCodebookOnly);
      auto masked = m.masked_steps();
      std::vector<std::vector<std::size_t>> cand;
      for (std::size_t t : masked) cand.push_back({t, (t + 3) % z.rows(), (t + 7) % z.rows()});
      Tensor ctx = ad::gather_rows(c, masked);
      return ad::add(losses::contrastive_loss(ctx, q.vectors, cand, 0.5),
                     ad::mean(ad::square(enc.features(wave))));
    };
    auto r = ad::grad_check(loss, enc.parameters());
    EXPECT_LT(r.max_relative_error, 1e-4) << seed << " " << r.worst_parameter;
  }
}

TEST(W2v, ParameterSets) {
  Rng rng(19);
  ToyW2vEncoder enc({}, rng);
  auto all = enc.parameters();
  auto feat = enc.feature_parameters();
  EXPECT_EQ(all.size(), feat.size() + 2);
  for (const auto& p : feat) {
    EXPECT_NE(p.name, "w2v.codebook");
    EXPECT_NE(p.name, "w2v.mask_embedding");
  }
  ad::ParameterPartition partition(feat, BiGruClassifier({}, rng).parameters());
  EXPECT_EQ(partition.all().size(), feat.size() + partition.downstream().size());
}

TEST(Checkpoint, BitExactRoundTrip) {
  Rng rng(20);
  AcnnClassifier a({}, rng);
  Checkpoint ckpt = snapshot(a.parameters());
  EXPECT_EQ(decode_checkpoint(encode_checkpoint(ckpt)), ckpt);

  testing::TempDir dir("ckpt");
  save_checkpoint(dir.path() / "m.ckpt", ckpt);
  Checkpoint loaded = load_checkpoint(dir.path() / "m.ckpt");
  EXPECT_EQ(loaded, ckpt);

  Rng other(21);
  AcnnClassifier b({}, other);
  EXPECT_NE(parameter_hash(a.parameters()), parameter_hash(b.parameters()));
  restore(b.parameters(), loaded);
  EXPECT_EQ(parameter_hash(a.parameters()), parameter_hash(b.parameters()));
}

TEST(Checkpoint, Errors) {
  Rng rng(22);
  BiGruClassifier gru({.input_dim = 3, .hidden_dim = 2}, rng);
  Checkpoint ckpt = snapshot(gru.parameters());
  std::string bytes = encode_checkpoint(ckpt);
  EXPECT_THROW(decode_checkpoint("not-a-checkpoint\n" + bytes), FormatError);
  EXPECT_THROW(decode_checkpoint(bytes.substr(0, bytes.size() - 3)), CorruptFileError);
  Checkpoint missing(ckpt.begin() + 1, ckpt.end());
  EXPECT_THROW(restore(gru.parameters(), missing), ContractError);
  Checkpoint reshaped = ckpt;
  reshaped[0].shape = {reshaped[0].values.size()};
  EXPECT_THROW(restore(gru.parameters(), reshaped), ContractError);
}

}  // namespace
}  // namespace swce::models
