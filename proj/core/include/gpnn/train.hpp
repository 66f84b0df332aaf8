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

#ifndef GPNN_TRAIN_HPP_
#define GPNN_TRAIN_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gpnn/kernels.hpp"
#include "gpnn/types.hpp"

namespace gpnn {

struct TrainConfig {
  std::size_t subset_size = 3000;  // e
  std::size_t block_size = 300;    // s; must divide subset_size
  double learning_rate = 0.1;
  std::size_t iterations = 100;
  std::uint64_t seed = 0;
  Theta init_theta{1.0, 0.1, 0.9};

  void validate() const;
};

// Adam moments over the three log-parameters.
struct OptimizerState {
  std::array<double, 3> first_moment{};
  std::array<double, 3> second_moment{};
  std::uint64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One bias-corrected Adam update. Returns the parameter delta (to be added
// to the log-parameters). Throws TrainingFailed on a non-finite gradient.
std::array<double, 3> optimizer_step(OptimizerState& state, const std::array<double, 3>& gradient,
                                     double learning_rate);

// Sum of per-block exact NLLs (the block-diagonal approximation to the full
// marginal likelihood) and its gradient. `blocks` holds row indices into
// `points`.
struct BlockObjective {
  double loss = 0.0;
  std::array<double, 3> gradient{};
};
BlockObjective block_diagonal_nll(const Theta& theta, KernelFamily family, const PointSet& points,
                                  std::span<const double> targets,
                                  const std::vector<std::vector<std::size_t>>& blocks);

struct TrainResult {
  Theta theta;                     // best-loss iterate
  double initial_loss = 0.0;       // at init_theta (NaN when iterations == 0)
  double best_loss = 0.0;
  std::size_t best_iteration = 0;  // 0 == init_theta
  std::size_t subset_size = 0;     // effective e after clamping
  std::size_t block_size = 0;      // effective s after clamping
  std::vector<double> loss_trace;  // loss at iterate 0..iterations
};

// Effective (subset_size, block_size) for n training points: e is clamped to
// n, s to e, and e is rounded down to a multiple of s.
std::pair<std::size_t, std::size_t> effective_subset(const TrainConfig& cfg, std::size_t n);

// Seeded uniform subset E of size e, partitioned into e/s blocks of size s.
std::vector<std::vector<std::size_t>> draw_blocks(const TrainConfig& cfg, std::size_t n);

// Phase-1 hyperparameter estimate: minimises the block-diagonal NLL over a
// random subset with Adam on log-parameters and returns the best iterate
// seen. Throws TrainingFailed (with block id) if a block gram cannot be
// factorised.
TrainResult estimate_theta(const PointSet& points, std::span<const double> targets,
                           KernelFamily family, const TrainConfig& cfg);

}  // namespace gpnn

#endif  // GPNN_TRAIN_HPP_
