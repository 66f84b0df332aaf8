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

#ifndef GPNN_GP_HPP_
#define GPNN_GP_HPP_

#include <array>
#include <span>

#include "gpnn/kernels.hpp"
#include "gpnn/types.hpp"

namespace gpnn {

// Gaussian predictive distribution of a noisy observation at a query point.
struct PredictiveDistribution {
  double mean = 0.0;
  double variance = 1.0;
  // Set when the raw variance fell below the noise floor and was clamped.
  bool clamped = false;
};

// Exact GP prediction from the given conditioning set (for GPnn, the m
// nearest neighbours of `query`):
//   mean     = k*^T K^{-1} y
//   variance = signal_var - k*^T K^{-1} k* + noise_var
// using one Cholesky factorisation of K and two triangular solves. The
// variance is clamped below at noise_var * (1 - 1e-12).
PredictiveDistribution predictive(const Theta& theta, KernelFamily family,
                                  const PointSet& neighbours, std::span<const double> targets,
                                  Point query);

struct NllEvaluation {
  double loss = 0.0;
  // d loss / d (log l, log noise_var, log signal_var).
  std::array<double, 3> gradient{};
};

// 0.5 * (y^T K^{-1} y + log|K| + s log 2 pi).
double log_marginal_nll(const Theta& theta, KernelFamily family, const PointSet& points,
                        std::span<const double> targets);

// Analytic gradient of log_marginal_nll with respect to the log parameters:
// 0.5 * tr((K^{-1} - a a^T) dK/dlog(theta_i)), a = K^{-1} y.
std::array<double, 3> nll_gradient(const Theta& theta, KernelFamily family,
                                   const PointSet& points, std::span<const double> targets);

// Loss and gradient from a single factorisation.
NllEvaluation nll_with_gradient(const Theta& theta, KernelFamily family, const PointSet& points,
                                std::span<const double> targets);

}  // namespace gpnn

#endif  // GPNN_GP_HPP_
