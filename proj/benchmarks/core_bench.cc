// benchmarks/core_bench.cc

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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "swce/autodiff/ops.h"
#include "swce/data/corpus.h"
#include "swce/features/composite.h"
#include "swce/features/mfcc.h"
#include "swce/models/gru.h"
#include "swce/models/w2v_encoder.h"

namespace {

using swce::ad::Tensor;

Tensor random_tensor(swce::ad::Shape shape, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(swce::ad::shape_size(shape));
  for (double& x : v) x = u(rng);
  return Tensor::parameter(std::move(shape), std::move(v));
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  Tensor a = random_tensor({n, n}, rng), b = random_tensor({n, n}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(swce::ad::matmul(a, b));
}
BENCHMARK(BM_Matmul)->Arg(32)->Arg(64)->Arg(128);

void BM_MatmulBackward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  Tensor a = random_tensor({n, n}, rng), b = random_tensor({n, n}, rng);
  for (auto _ : state) {
    a.zero_grad();
    b.zero_grad();
    swce::ad::sum(swce::ad::matmul(a, b)).backward();
  }
}
BENCHMARK(BM_MatmulBackward)->Arg(64);

void BM_Conv1d(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Tensor x = random_tensor({16000, 1}, rng);
  Tensor w = random_tensor({5, 32}, rng), b = random_tensor({32}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(swce::ad::conv1d(x, w, b, 5, 5));
}
BENCHMARK(BM_Conv1d);

void BM_Mfcc(benchmark::State& state) {
  std::vector<double> frame(4000);
  for (std::size_t i = 0; i < frame.size(); ++i) frame[i] = std::sin(0.07 * i);
  for (auto _ : state) benchmark::DoNotOptimize(swce::features::mfcc(frame));
}
BENCHMARK(BM_Mfcc);

void BM_CompositeFeatures6s(benchmark::State& state) {
  auto profile = swce::data::default_profiles()[1];
  auto sig = swce::data::synthesize_clip(profile, 6.0, 9);
  for (auto _ : state) benchmark::DoNotOptimize(swce::features::raw_composite_features(sig));
}
BENCHMARK(BM_CompositeFeatures6s)->Unit(benchmark::kMillisecond);

void BM_GruForward(benchmark::State& state) {
  std::mt19937_64 rng(4);
  swce::models::BiGruClassifier gru({}, rng);
  std::vector<Tensor> batch;
  for (int i = 0; i < 8; ++i) batch.push_back(random_tensor({29, 38}, rng));
  for (auto _ : state) benchmark::DoNotOptimize(gru.forward(batch));
}
BENCHMARK(BM_GruForward)->Unit(benchmark::kMillisecond);

void BM_EncoderFeatures(benchmark::State& state) {
  std::mt19937_64 rng(5);
  swce::models::ToyW2vEncoder enc({}, rng);
  Tensor wave = random_tensor({16000, 1}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(enc.features(wave));
}
BENCHMARK(BM_EncoderFeatures)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
