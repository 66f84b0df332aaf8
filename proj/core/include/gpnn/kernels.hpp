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

#ifndef GPNN_KERNELS_HPP_
#define GPNN_KERNELS_HPP_

#include <array>
#include <string>
#include <string_view>

#include "gpnn/types.hpp"

namespace gpnn {

// Kernel hyperparameters. All three are strictly positive; optimisers work on
// the natural logarithms.
struct Theta {
  double lengthscale = 1.0;
  double noise_var = 0.1;
  double signal_var = 0.9;

  // Throws InvalidArgument unless every component is finite and > 0.
  void validate() const;

  std::array<double, 3> to_log() const;
  static Theta from_log(const std::array<double, 3>& log_theta);

  // (l, k*noise_var, k*signal_var): leaves predictive means unchanged and
  // multiplies predictive variances by k.
  Theta scaled_variances(double k) const;

  bool operator==(const Theta&) const = default;
};

enum class KernelFamily { kRbf, kExponential, kMatern32 };

// Accepts "rbf", "exponential", "matern32" in any case.
KernelFamily parse_kernel_family(std::string_view name);
std::string_view to_string(KernelFamily family);

// Normalised correlation at scaled distance r = |x - x'| / l. Equals 1 at
// r = 0 and is non-increasing in r for every family.
double correlation(KernelFamily family, double r);

// d correlation / d r.
double correlation_derivative(KernelFamily family, double r);

double euclidean_distance(Point x, Point x2);

// signal_var * correlation(|x - x2| / l), plus noise_var when add_noise is
// set. Callers set add_noise for gram diagonal entries only: noise belongs to
// an observation, not to a coordinate.
double kernel(const Theta& theta, KernelFamily family, Point x, Point x2, bool add_noise);

// Noisy gram matrix over the rows of `points`. The upper triangle is computed
// and mirrored, so the result is exactly symmetric.
Matrix gram(const Theta& theta, KernelFamily family, const PointSet& points);

// Correlation matrix c(x_i/l, x_j/l) (unit diagonal, no noise, no signal_var).
Matrix correlation_matrix(KernelFamily family, double lengthscale, const PointSet& points);

// Noise-free covariances between each row of `points` and `query`.
Vector cross_vector(const Theta& theta, KernelFamily family, const PointSet& points, Point query);

// rho(x, x') = sigma_f * sqrt(1 - c(x/l, x'/l)). A monotone transform of the
// Euclidean distance, so nearest-neighbour orderings coincide.
double kernel_distance(const Theta& theta, KernelFamily family, Point x, Point x2);

}  // namespace gpnn

#endif  // GPNN_KERNELS_HPP_
