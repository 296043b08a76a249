// Copyright 2026 The rfkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "rfkit/dataset.hpp"
#include "rfkit/distributions.hpp"
#include "rfkit/feature_maps.hpp"
#include "rfkit/harness.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/multivariate.hpp"

namespace {

using namespace rfkit;

void BM_ExactMatern(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RowMatrix x = sphere_points(n, 12, 1);
  const KernelSpec k = KernelSpec::matern(4.0, ShapeMatrix::identity(12));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_matrix(k, x));
}
BENCHMARK(BM_ExactMatern)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FeaturizedGram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  const RowMatrix x = sphere_points(n, 12, 1);
  const KernelSpec k = KernelSpec::matern(4.0, ShapeMatrix::identity(12));
  const FeatureOperator op = build_orf(k, p, SeedRecord{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(gram_approx(featurize(op, x)));
}
BENCHMARK(BM_FeaturizedGram)
    ->ArgsProduct({{500, 1000, 2000}, {48, 192, 768}})
    ->Unit(benchmark::kMillisecond);

void BM_BuildOperator(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const KernelSpec k = KernelSpec::exp_power(0.7, ShapeMatrix::identity(16));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_orf(k, p, SeedRecord{3, 0}).projection());
  }
}
BENCHMARK(BM_BuildOperator)->Arg(256)->Arg(4096);

void BM_StableCms(benchmark::State& state) {
  RngStream rng(4, 0);
  const StableParams params{0.7, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(sample_stable_cms(params, rng));
}
BENCHMARK(BM_StableCms);

void BM_Gbp(benchmark::State& state) {
  RngStream rng(5, 0);
  const GbpParams params{8.0, 1.5, 2.0, 1.7};
  for (auto _ : state) benchmark::DoNotOptimize(sample_gbp(params, rng));
}
BENCHMARK(BM_Gbp);

void BM_HaarBlocks(benchmark::State& state) {
  RngStream rng(6, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_haar_blocks(1024, 16, rng).q);
}
BENCHMARK(BM_HaarBlocks);

}  // namespace

BENCHMARK_MAIN();
