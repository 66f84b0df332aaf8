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

#include "gpnn/gp.hpp"

#include <cmath>
#include <numbers>

#include "gpnn/error.hpp"
#include "gpnn/linalg.hpp"

namespace gpnn {
namespace {

constexpr double kLog2Pi = 1.8378770664093453;  // log(2 pi)
constexpr double kVarianceFloorFactor = 1.0 - 1e-12;

void check_conditioning_set(std::string_view where, const PointSet& points,
                            std::span<const double> targets) {
  if (points.rows() == 0) throw InvalidArgument(std::string(where) + ": empty conditioning set");
  if (static_cast<std::size_t>(points.rows()) != targets.size()) {
    throw DimensionMismatch(std::string(where) + " (targets)", static_cast<std::size_t>(points.rows()),
                            targets.size());
  }
}

}  // namespace

PredictiveDistribution predictive(const Theta& theta, KernelFamily family,
                                  const PointSet& neighbours, std::span<const double> targets,
                                  Point query) {
  check_conditioning_set("predictive", neighbours, targets);
  if (static_cast<std::size_t>(neighbours.cols()) != query.size()) {
    throw DimensionMismatch("predictive (query)", static_cast<std::size_t>(neighbours.cols()),
                            query.size());
  }

  const CholeskyFactor factor = cholesky(gram(theta, family, neighbours));
  const Vector v = factor.solve_lower(cross_vector(theta, family, neighbours, query));
  const Vector w = factor.solve_lower(as_vector(targets));

  PredictiveDistribution out;
  out.mean = v.dot(w);
  out.variance = theta.signal_var - v.squaredNorm() + theta.noise_var;
  const double floor = theta.noise_var * kVarianceFloorFactor;
  if (!(out.variance >= floor)) {
    out.variance = floor;
    out.clamped = true;
  }
  return out;
}

double log_marginal_nll(const Theta& theta, KernelFamily family, const PointSet& points,
                        std::span<const double> targets) {
  check_conditioning_set("log_marginal_nll", points, targets);
  const CholeskyFactor factor = cholesky(gram(theta, family, points));
  const Vector w = factor.solve_lower(as_vector(targets));
  const double s = static_cast<double>(points.rows());
  return 0.5 * (w.squaredNorm() + factor.log_determinant() + s * kLog2Pi);
}

NllEvaluation nll_with_gradient(const Theta& theta, KernelFamily family, const PointSet& points,
                                std::span<const double> targets) {
  check_conditioning_set("nll_with_gradient", points, targets);
  const Eigen::Index n = points.rows();

  // Correlation matrix and d K / d log l share the pairwise distances.
  Matrix corr(n, n);
  Matrix dk_dlog_l(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    corr(j, j) = 1.0;
    dk_dlog_l(j, j) = 0.0;
    const Point xj = row_of(points, j);
    for (Eigen::Index i = 0; i < j; ++i) {
      const double r = euclidean_distance(row_of(points, i), xj) / theta.lengthscale;
      const double c = correlation(family, r);
      const double dl = -theta.signal_var * correlation_derivative(family, r) * r;
      corr(i, j) = corr(j, i) = c;
      dk_dlog_l(i, j) = dk_dlog_l(j, i) = dl;
    }
  }
  Matrix k = theta.signal_var * corr;
  k.diagonal().array() += theta.noise_var;

  const CholeskyFactor factor = cholesky(k);
  const Vector y = as_vector(targets);
  const Vector alpha = solve(factor, y);

  NllEvaluation out;
  out.loss = 0.5 * (y.dot(alpha) + factor.log_determinant() + static_cast<double>(n) * kLog2Pi);

  Matrix w = solve(factor, Matrix(Matrix::Identity(n, n)));
  w.noalias() -= alpha * alpha.transpose();
  out.gradient[0] = 0.5 * (w.array() * dk_dlog_l.array()).sum();
  out.gradient[1] = 0.5 * theta.noise_var * w.trace();
  out.gradient[2] = 0.5 * theta.signal_var * (w.array() * corr.array()).sum();
  return out;
}

std::array<double, 3> nll_gradient(const Theta& theta, KernelFamily family,
                                   const PointSet& points, std::span<const double> targets) {
  return nll_with_gradient(theta, family, points, targets).gradient;
}

}  // namespace gpnn
