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


#ifndef GPNN_SIMULATE_HPP_
#define GPNN_SIMULATE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gpnn/data.hpp"
#include "gpnn/kernels.hpp"
#include "gpnn/metrics.hpp"
#include "gpnn/random.hpp"
#include "gpnn/types.hpp"

namespace gpnn {

enum class NoiseLaw { kGaussian, kLaplace };

NoiseLaw parse_noise_law(std::string_view name);
std::string_view to_string(NoiseLaw law);

// One (kernel, theta) pair under which predictions are scored.
struct AssumedModel {
  KernelFamily kernel = KernelFamily::kRbf;
  Theta theta;
};

// Inputs are drawn from N(0, I/d). Observations carry additive noise of
// variance gen_theta.noise_var under `noise`; the test target y* gets its own
// noise draw.
struct SimConfig {
  std::size_t n = 1000;
  std::size_t n_star = 1000;
  std::size_t m = 100;
  std::size_t d = 20;
  KernelFamily gen_kernel = KernelFamily::kRbf;
  Theta gen_theta;
  NoiseLaw noise = NoiseLaw::kGaussian;
  std::vector<AssumedModel> assumed;  // empty: score the generating model only
  std::uint64_t seed = 0;
  // Seed for the training design. Defaults to `seed`; fixing it lets two runs
  // share X while sampling independently.
  std::optional<std::uint64_t> design_seed;

  void validate() const;
  std::vector<AssumedModel> assumed_or_generating() const;
};

// A test point, its training neighbours and one joint draw of their
// observations.
struct Neighbourhood {
  PointSet neighbours;  // m x d
  Vector targets;       // m observed values
  Vector query;         // x*
  double target = 0.0;  // observed y*
};

struct SweepEntry {
  std::size_t n = 0;
  std::size_t m = 0;
  AssumedModel assumed;
  MetricsReport report;
  MetricErrors errors;  // sample sd / sqrt(n_star)
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // one per assumed model, in order
};

// L z with z ~ N(0, I) and L the (jittered) Cholesky factor of cov.
Vector sample_mvn(const Matrix& cov, RandomStream& rng);

// x ~ N(0, I/d), one point per row.
PointSet sample_design(std::size_t count, std::size_t d, RandomStream& rng);

// Joint draw of observations at `points` under the generating model.
Vector sample_observations(const PointSet& points, KernelFamily kernel, const Theta& theta,
                           NoiseLaw noise, RandomStream& rng);

// Set-up phase: one neighbourhood per test point, sampled on the joint
// (m+1)-point gram only.
std::vector<Neighbourhood> simulate_neighbourhoods(const SimConfig& cfg);

// Expensive variant: per test point, the joint over all n training values and
// y* is sampled, then the m nearest are kept. Requires n <= 500.
std::vector<Neighbourhood> simulate_neighbourhoods_full(const SimConfig& cfg);

// Evaluation phase: scores every assumed model on the stored neighbourhoods.
SweepResult evaluate_neighbourhoods(const SimConfig& cfg,
                                    const std::vector<Neighbourhood>& neighbourhoods);

SweepResult run_algorithm1(const SimConfig& cfg);
SweepResult run_algorithm1b_oracle(const SimConfig& cfg);

inline constexpr std::size_t kOracleMaxN = 500;

// Independent GP blocks of `block_size` consecutive rows, each sampled from
// its full noisy gram; rows in different blocks are uncorrelated. A single
// block (block_size >= n) gives an exact joint GP draw.
Dataset gen_gp_dataset(std::size_t n, std::size_t d, KernelFamily kernel, const Theta& theta,
                       std::size_t block_size, RandomStream& rng);

}  // namespace gpnn

#endif  // GPNN_SIMULATE_HPP_
