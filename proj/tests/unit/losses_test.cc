// tests/unit/losses_test.cc

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
#include <cstring>

#include <gtest/gtest.h>

#include "swce/autodiff/grad_check.h"
#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"
#include "swce/losses/classification.h"
#include "swce/losses/contrastive.h"
#include "swce/training/pretrain.h"
#include "testing.h"

namespace swce::losses {
namespace {

using testing::Rng;

Tensor logits_of(std::vector<double> probs) {
  std::vector<double> l;
  for (double p : probs) l.push_back(std::log(p));
  return Tensor::constant({1, probs.size()}, l);
}

std::uint64_t bits(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return u;
}

TEST(CrossEntropy, Examples) {
  std::vector<std::size_t> y0 = {0};
  EXPECT_NEAR(cross_entropy(logits_of({0.8, 0.1, 0.1}), y0).item(), -std::log(0.8), 1e-12);
  EXPECT_NEAR(cross_entropy(Tensor::constant({1, 3}, {0, 0, 0}), y0).item(), std::log(3.0),
              1e-15);
  EXPECT_LT(cross_entropy(Tensor::constant({1, 3}, {40, 0, 0}), y0).item(), 1e-12);
  std::vector<std::size_t> bad = {3};
  EXPECT_THROW(cross_entropy(Tensor::constant({1, 3}, {0, 0, 0}), bad), ContractError);
}

TEST(CrossEntropy, StableForHugeLogits) {
  std::vector<std::size_t> y = {1};
  double l = cross_entropy(Tensor::constant({1, 3}, {1e4, 0, -1e4}), y).item();
  EXPECT_NEAR(l, 1e4, 1e-9);
}

TEST(SoftWeight, Examples) {
  EXPECT_NEAR(soft_weight(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}, 1), 1.0, 1e-15);
  // Closed form exp(1/N - p[m]) exactly, and the usual 5-digit quotes loosely.
  EXPECT_NEAR(soft_weight(std::vector<double>{0.8, 0.1, 0.1}, 0), std::exp(1.0 / 3 - 0.8), 1e-12);
  EXPECT_NEAR(soft_weight(std::vector<double>{0.4, 0.3, 0.3}, 0), std::exp(1.0 / 3 - 0.4), 1e-12);
  EXPECT_NEAR(soft_weight(std::vector<double>{0.0, 0.5, 0.5}, 0), std::exp(1.0 / 3), 1e-12);
  EXPECT_NEAR(soft_weight(std::vector<double>{0.8, 0.1, 0.1}, 0), 0.62701, 1e-3);
  EXPECT_NEAR(soft_weight(std::vector<double>{0.4, 0.3, 0.3}, 0), 0.93551, 1e-3);
  EXPECT_NEAR(soft_weight(std::vector<double>{0.0, 0.5, 0.5}, 0), 1.39561, 1e-3);
}

TEST(SoftWeight, RejectsInvalidVectors) {
  EXPECT_THROW(soft_weight(std::vector<double>{0.5, 0.6, -0.1}, 0), ContractError);
  EXPECT_THROW(soft_weight(std::vector<double>{0.5, 0.4, 0.0}, 0), ContractError);
  EXPECT_THROW(soft_weight(std::vector<double>{0.5, 0.5}, 2), ContractError);
}

TEST(SoftWeight, ClosedFormAndBounds) {
  Rng rng(101);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t n = 2 + trial % 5;
    auto p = testing::random_simplex(n, rng);
    for (std::size_t m = 0; m < n; ++m) {
      double w = soft_weight(p, m);
      EXPECT_NEAR(w, std::exp(1.0 / n - p[m]), 1e-12);
      EXPECT_GE(w, std::exp(1.0 / n - 1.0));
      EXPECT_LE(w, std::exp(1.0 / n));
    }
  }
}

TEST(SoftWeight, DecreasesAsTrueClassGainsMass) {
  // Remaining mass split 2:1 between the wrong classes.
  double previous = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 20; ++i) {
    double pm = i / 20.0;
    double rest = 1.0 - pm;
    double w = soft_weight(std::vector<double>{pm, rest * 2 / 3, 1.0 - pm - rest * 2 / 3}, 0);
    EXPECT_LT(w, previous);
    previous = w;
  }
}

TEST(Swce, Examples) {
  std::vector<std::size_t> y0 = {0};
  EXPECT_NEAR(swce_loss(logits_of({0.8, 0.1, 0.1}), y0).item(),
              std::exp(1.0 / 3 - 0.8) * -std::log(0.8), 1e-12);
  EXPECT_NEAR(swce_loss(logits_of({0.8, 0.1, 0.1}), y0).item(), 0.13991, 1e-3);
  // exp(1/3 - 0.4) * ln 2.5 = 0.857196; the often quoted 0.85741 is off by 2.1e-4.
  EXPECT_NEAR(swce_loss(logits_of({0.4, 0.3, 0.3}), y0).item(),
              std::exp(1.0 / 3 - 0.4) * std::log(2.5), 1e-12);
  std::vector<std::size_t> y = {0, 1, 2, 1};
  Tensor uniform = Tensor::constant({4, 3}, std::vector<double>(12, 0.25));
  EXPECT_NEAR(swce_loss(uniform, y).item(), std::log(3.0), 1e-15);
}

TEST(Swce, UnitWeightsReproduceCrossEntropyBitwise) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor logits = testing::random_constant({8, 3}, rng, 4.0);
    std::vector<std::size_t> y(8);
    for (auto& v : y) v = rng() % 3;
    double a = swce_loss(logits, y, {.weight_override = 1.0}).item();
    double b = cross_entropy(logits, y).item();
    EXPECT_EQ(bits(a), bits(b));
  }
}

TEST(Swce, LargerWeightedLossForLessConfidentSample) {
  Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    auto pa = testing::random_simplex(3, rng);
    auto pb = testing::random_simplex(3, rng);
    if (pa[0] == pb[0]) continue;
    if (pa[0] > pb[0]) std::swap(pa, pb);
    std::vector<std::size_t> y = {0};
    EXPECT_GT(swce_loss(logits_of(pa), y).item(), swce_loss(logits_of(pb), y).item());
  }
}

TEST(Swce, WeightIsDetachedByDefault) {
  // With a detached weight the gradient is w times the CE gradient.
  Tensor logits = Tensor::parameter({1, 3}, {0.3, -0.2, 0.9});
  std::vector<std::size_t> y = {1};
  double w = soft_weights(logits, y)[0];
  swce_loss(logits, y).backward();
  std::vector<double> g(logits.grad().begin(), logits.grad().end());
  logits.zero_grad();
  cross_entropy(logits, y).backward();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(g[i], w * logits.grad()[i], 1e-15);
}

TEST(Losses, GradCheckOverTenSeeds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    Tensor w1 = testing::random_parameter({4, 5}, rng);
    Tensor w2 = testing::random_parameter({5, 3}, rng);
    Tensor x = testing::random_constant({6, 4}, rng);
    std::vector<std::size_t> y = {0, 1, 2, 2, 1, 0};
    ad::NamedTensors params = {{"w1", w1}, {"w2", w2}};
    auto logits = [&] { return ad::matmul(ad::tanh(ad::matmul(x, w1)), w2); };
    EXPECT_LT(ad::grad_check([&] { return cross_entropy(logits(), y); }, params)
                  .max_relative_error, 1e-4);
    // Detached weights: the gradient is that of sum(w_i CE_i) with w frozen.
    std::vector<double> w = soft_weights(logits(), y);
    Tensor frozen = Tensor::constant({6}, w);
    auto surrogate = [&] {
      return ad::mean(ad::mul(per_sample_cross_entropy(logits(), y), frozen));
    };
    EXPECT_LT(ad::grad_check(surrogate, params).max_relative_error, 1e-4);
    auto grads = [&](const Tensor& loss) {
      for (auto& p : params) p.tensor.zero_grad();
      loss.backward();
      std::vector<double> g;
      for (auto& p : params) g.insert(g.end(), p.tensor.grad().begin(), p.tensor.grad().end());
      return g;
    };
    auto detached = grads(swce_loss(logits(), y));
    auto reference = grads(surrogate());
    for (std::size_t i = 0; i < detached.size(); ++i)
      EXPECT_NEAR(detached[i], reference[i], 1e-12 * std::max(1.0, std::abs(reference[i])));
    EXPECT_LT(ad::grad_check([&] { return swce_loss(logits(), y, {.weight_gradient = true}); },
                             params).max_relative_error, 1e-4);
  }
}

TEST(Contrastive, Examples) {
  std::vector<double> q = {1.0, 2.0, 0.5};
  EXPECT_NEAR(contrastive_loss(q, q, {q, q}, 0.1), std::log(3.0), 1e-12);
  std::vector<double> c = {1, 0, 0};
  EXPECT_NEAR(contrastive_loss(c, c, {{0, 1, 0}, {0, 0, 1}}, 0.1),
              std::log(1.0 + 2.0 * std::exp(-10.0)), 1e-15);
  EXPECT_NEAR(std::log(1.0 + 2.0 * std::exp(-10.0)), 9.079e-5, 5e-8);
  EXPECT_THROW(contrastive_loss(std::vector<double>{0, 0, 0}, c, {{0, 1, 0}}, 0.1),
               ContractError);
}

TEST(Contrastive, ScaleInvariantAndNonNegative) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = testing::uniform_values(6, rng);
    auto q = testing::uniform_values(6, rng);
    std::vector<std::vector<double>> d;
    for (int k = 0; k < 4; ++k) d.push_back(testing::uniform_values(6, rng));
    double l = contrastive_loss(c, q, d, 0.1);
    EXPECT_GE(l, 0.0);
    auto scaled = c;
    for (double& v : scaled) v *= 7.5;
    EXPECT_NEAR(contrastive_loss(scaled, q, d, 0.1), l, 1e-10);
  }
}

TEST(Contrastive, TensorFormMatchesDirectEvaluation) {
  Rng rng(13);
  Tensor ctx = testing::random_constant({2, 4}, rng);
  Tensor pool = testing::random_constant({5, 4}, rng);
  std::vector<std::vector<std::size_t>> cand = {{0, 2, 3}, {1, 4, 0}};
  double direct = 0.0;
  for (std::size_t m = 0; m < 2; ++m) {
    auto row = [&](const Tensor& t, std::size_t r) {
      return std::vector<double>(t.values().begin() + r * 4, t.values().begin() + r * 4 + 4);
    };
    direct += contrastive_loss(row(ctx, m), row(pool, cand[m][0]),
                               {row(pool, cand[m][1]), row(pool, cand[m][2])}, 0.1);
  }
  EXPECT_NEAR(contrastive_loss(ctx, pool, cand, 0.1).item(), direct / 2, 1e-12);
}

TEST(Contrastive, ExcludedDistractorsLeaveTheSoftmax) {
  Rng rng(21);
  Tensor ctx = testing::random_constant({1, 4}, rng);
  Tensor pool = testing::random_constant({4, 4}, rng);
  double full = contrastive_loss(ctx, pool, {{0, 1, 2, 3}}, 0.1, {{false, false, true, true}})
                    .item();
  double reduced = contrastive_loss(ctx, pool, {{0, 1}}, 0.1).item();
  EXPECT_NEAR(full, reduced, 1e-12);
  EXPECT_THROW(contrastive_loss(ctx, pool, {{0, 1}}, 0.1, {{true, false}}), ContractError);
}

TEST(Contrastive, GoesToZeroForAlignedTargets) {
  std::vector<double> c = {0.0, 3.0, 0.0};
  double l = contrastive_loss(c, c, {{1, 0, 0}, {0, 0, 1}}, 0.01);
  EXPECT_LT(l, 1e-40);
}

TEST(Contrastive, GradCheckOverTenSeeds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    Tensor ctx = testing::random_parameter({3, 4}, rng);
    Tensor pool = testing::random_parameter({6, 4}, rng);
    std::vector<std::vector<std::size_t>> cand = {{0, 1, 2}, {3, 4, 5}, {5, 0, 1}};
    auto r = ad::grad_check([&] { return contrastive_loss(ctx, pool, cand, 0.5); },
                            {{"ctx", ctx}, {"pool", pool}});
    EXPECT_LT(r.max_relative_error, 1e-4) << seed;
  }
}

TEST(Diversity, ZeroForEvenUseAndOneForCollapse) {
  Tensor codebook = Tensor::constant({2, 2}, {10, 0, 0, 10});
  Tensor even = Tensor::constant({2, 2}, {10, 0, 0, 10});
  EXPECT_NEAR(codebook_diversity_loss(even, codebook, 0.01).item(), 0.0, 1e-9);
  Tensor collapsed = Tensor::constant({2, 2}, {10, 0, 10, 0});
  EXPECT_NEAR(codebook_diversity_loss(collapsed, codebook, 0.01).item(), 1.0, 1e-9);
}

TEST(Diversity, DefaultTemperatureSeesHardCollapse) {
  // Rows 3 apart per axis; every latent sits on row 0.
  std::vector<double> rows(8 * 8, 0.0), lat(16 * 8, 0.0);
  for (std::size_t i = 0; i < 8; ++i) rows[i * 8 + i] = 3.0;
  for (std::size_t t = 0; t < 16; ++t) lat[t * 8] = 3.0 + 0.01 * static_cast<double>(t);
  Tensor codebook = Tensor::constant({8, 8}, rows);
  Tensor collapsed = Tensor::constant({16, 8}, lat);
  const double t = training::PretrainConfig{}.diversity_temperature;
  EXPECT_GT(codebook_diversity_loss(collapsed, codebook, t).item(), 0.9);
}

TEST(Diversity, GradCheck) {
  Rng rng(5);
  Tensor z = testing::random_parameter({5, 3}, rng);
  Tensor e = testing::random_parameter({4, 3}, rng);
  auto r = ad::grad_check([&] { return codebook_diversity_loss(z, e, 2.0); },
                          {{"z", z}, {"e", e}});
  EXPECT_LT(r.max_relative_error, 1e-4);
}

TEST(ContrastiveConfig, Validation) {
  EXPECT_THROW((ContrastiveConfig{.temperature = 0.0}.validate()), ConfigError);
  EXPECT_THROW((ContrastiveConfig{.num_distractors = 0}.validate()), ConfigError);
  EXPECT_NO_THROW(ContrastiveConfig{}.validate());
}

}  // namespace
}  // namespace swce::losses
