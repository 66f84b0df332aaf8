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

#include "gpnn/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "gpnn/error.hpp"
#include "gpnn/gp.hpp"
#include "gpnn/parallel.hpp"
#include "gpnn/random.hpp"

namespace gpnn {

void TrainConfig::validate() const {
  if (subset_size == 0 || block_size == 0) {
    throw InvalidArgument("TrainConfig: subset_size and block_size must be positive");
  }
  if (subset_size % block_size != 0) {
    throw InvalidArgument("TrainConfig: block_size (" + std::to_string(block_size) +
                          ") must divide subset_size (" + std::to_string(subset_size) + ")");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("TrainConfig: learning_rate must be positive");
  }
  init_theta.validate();
}

std::array<double, 3> optimizer_step(OptimizerState& state, const std::array<double, 3>& gradient,
                                     double learning_rate) {
  for (double g : gradient) {
    if (!std::isfinite(g)) {
      std::ostringstream msg;
      msg << "optimizer_step: non-finite gradient (" << gradient[0] << ", " << gradient[1] << ", "
          << gradient[2] << ") at step " << state.step + 1;
      throw TrainingFailed(msg.str(), -1);
    }
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);
  std::array<double, 3> delta{};
  for (std::size_t i = 0; i < 3; ++i) {
    state.first_moment[i] = state.beta1 * state.first_moment[i] + (1.0 - state.beta1) * gradient[i];
    state.second_moment[i] =
        state.beta2 * state.second_moment[i] + (1.0 - state.beta2) * gradient[i] * gradient[i];
    const double m_hat = state.first_moment[i] / correction1;
    const double v_hat = state.second_moment[i] / correction2;
    delta[i] = -learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
  return delta;
}

BlockObjective block_diagonal_nll(const Theta& theta, KernelFamily family, const PointSet& points,
                                  std::span<const double> targets,
                                  const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<NllEvaluation> per_block(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      const auto& rows = blocks[b];
      PointSet block_points(static_cast<Eigen::Index>(rows.size()), points.cols());
      std::vector<double> block_targets(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        block_points.row(static_cast<Eigen::Index>(i)) = points.row(static_cast<Eigen::Index>(rows[i]));
        block_targets[i] = targets[rows[i]];
      }
      try {
        per_block[b] = nll_with_gradient(theta, family, block_points, block_targets);
      } catch (const NotPositiveDefinite& e) {
        throw TrainingFailed("block " + std::to_string(b) + ": " + e.what(),
                             static_cast<std::ptrdiff_t>(b));
      }
    }
  });

  // Fixed reduction order.
  BlockObjective out;
  for (const auto& eval : per_block) {
    out.loss += eval.loss;
    for (std::size_t i = 0; i < 3; ++i) out.gradient[i] += eval.gradient[i];
  }
  return out;
}

std::pair<std::size_t, std::size_t> effective_subset(const TrainConfig& cfg, std::size_t n) {
  std::size_t e = std::min(cfg.subset_size, n);
  const std::size_t s = std::min(cfg.block_size, e);
  e = (e / s) * s;
  return {e, s};
}

std::vector<std::vector<std::size_t>> draw_blocks(const TrainConfig& cfg, std::size_t n) {
  const auto [e, s] = effective_subset(cfg, n);
  // Partial Fisher-Yates: the first e entries are a uniform random subset in
  // uniform random order.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RandomStream rng(cfg.seed, StreamPurpose::kSubset);
  for (std::size_t i = 0; i < e; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(perm[i], perm[j]);
  }
  std::vector<std::vector<std::size_t>> blocks(e / s);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].assign(perm.begin() + static_cast<std::ptrdiff_t>(b * s),
                     perm.begin() + static_cast<std::ptrdiff_t>((b + 1) * s));
  }
  return blocks;
}

TrainResult estimate_theta(const PointSet& points, std::span<const double> targets,
                           KernelFamily family, const TrainConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(points.rows());
  if (n == 0) throw InvalidArgument("estimate_theta: empty training set");
  if (targets.size() != n) throw DimensionMismatch("estimate_theta (targets)", n, targets.size());

  TrainResult result;
  std::tie(result.subset_size, result.block_size) = effective_subset(cfg, n);
  result.theta = cfg.init_theta;
  result.best_iteration = 0;
  if (cfg.iterations == 0) {
    result.initial_loss = std::numeric_limits<double>::quiet_NaN();
    result.best_loss = result.initial_loss;
    return result;
  }

  const auto blocks = draw_blocks(cfg, n);
  std::array<double, 3> log_theta = cfg.init_theta.to_log();
  OptimizerState state;
  result.best_loss = std::numeric_limits<double>::infinity();

  for (std::size_t it = 0; it <= cfg.iterations; ++it) {
    const Theta current = it == 0 ? cfg.init_theta : Theta::from_log(log_theta);
    const BlockObjective objective = block_diagonal_nll(current, family, points, targets, blocks);
    result.loss_trace.push_back(objective.loss);
    if (it == 0) result.initial_loss = objective.loss;
    if (objective.loss < result.best_loss) {
      result.best_loss = objective.loss;
      result.theta = current;
      result.best_iteration = it;
    }
    if (it == cfg.iterations) break;
    const auto delta = optimizer_step(state, objective.gradient, cfg.learning_rate);
    for (std::size_t i = 0; i < 3; ++i) log_theta[i] += delta[i];
  }
  return result;
}

}  // namespace gpnn
