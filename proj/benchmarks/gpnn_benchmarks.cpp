// Copyright 2026 The gpnn Authors.
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

#include "gpnn/gp.hpp"
#include "gpnn/nn_index.hpp"
#include "gpnn/simulate.hpp"
#include "gpnn/train.hpp"

namespace gpnn {
namespace {

const Theta kTheta{1.0, 0.1, 0.9};

PointSet design(std::size_t n, std::size_t d, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_design(n, d, rng);
}

// Query cost against n at fixed d; expected to grow sublinearly at low d.
void BM_NeighbourQuery(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const NeighbourIndex index(design(n, d, 1));
  const PointSet queries = design(256, d, 2);
  Eigen::Index q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.query(row_of(queries, q), 400));
    q = (q + 1) % queries.rows();
  }
}
BENCHMARK(BM_NeighbourQuery)
    ->ArgsProduct({{10000, 100000, 1000000}, {2, 8, 20}})
    ->Unit(benchmark::kMicrosecond);

void BM_IndexBuild(benchmark::State& state) {
  const PointSet x = design(static_cast<std::size_t>(state.range(0)), 10, 3);
  for (auto _ : state) benchmark::DoNotOptimize(NeighbourIndex(x));
}
BENCHMARK(BM_IndexBuild)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_Predictive(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  RandomStream rng(4);
  const PointSet x = sample_design(m, 10, rng);
  const Vector y = sample_observations(x, KernelFamily::kRbf, kTheta, NoiseLaw::kGaussian, rng);
  const PointSet q = sample_design(1, 10, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(predictive(kTheta, KernelFamily::kRbf, x, as_span(y), row_of(q, 0)));
  }
}
BENCHMARK(BM_Predictive)->Arg(50)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

// Training cost is set by the subset size e, so n should not matter.
void BM_EstimateTheta(benchmark::State& state) {
  RandomStream rng(5);
  const Dataset data = gen_gp_dataset(static_cast<std::size_t>(state.range(0)), 10,
                                      KernelFamily::kRbf, kTheta, 300, rng);
  TrainConfig c;
  c.iterations = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_theta(data.x, as_span(data.y), KernelFamily::kRbf, c));
  }
}
BENCHMARK(BM_EstimateTheta)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace gpnn

BENCHMARK_MAIN();
