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

#include "gpnn/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "gpnn/error.hpp"

namespace gpnn {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void check_same_dim(std::string_view where, std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(std::string(where), expected, actual);
}

}  // namespace

void Theta::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(lengthscale) || !ok(noise_var) || !ok(signal_var)) {
    throw InvalidArgument("Theta: components must be finite and strictly positive (l=" +
                          std::to_string(lengthscale) + ", noise_var=" + std::to_string(noise_var) +
                          ", signal_var=" + std::to_string(signal_var) + ")");
  }
}

std::array<double, 3> Theta::to_log() const {
  return {std::log(lengthscale), std::log(noise_var), std::log(signal_var)};
}

Theta Theta::from_log(const std::array<double, 3>& log_theta) {
  return {std::exp(log_theta[0]), std::exp(log_theta[1]), std::exp(log_theta[2])};
}

Theta Theta::scaled_variances(double k) const {
  return {lengthscale, k * noise_var, k * signal_var};
}

KernelFamily parse_kernel_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "rbf") return KernelFamily::kRbf;
  if (lower == "exponential") return KernelFamily::kExponential;
  if (lower == "matern32") return KernelFamily::kMatern32;
  throw InvalidArgument("unknown kernel family '" + std::string(name) +
                        "' (expected rbf, exponential or matern32)");
}

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kRbf:
      return "rbf";
    case KernelFamily::kExponential:
      return "exponential";
    case KernelFamily::kMatern32:
      return "matern32";
  }
  return "unknown";
}

double correlation(KernelFamily family, double r) {
  switch (family) {
    case KernelFamily::kRbf:
      return std::exp(-0.5 * r * r);
    case KernelFamily::kExponential:
      return std::exp(-r);
    case KernelFamily::kMatern32: {
      const double s = kSqrt3 * r;
      return (1.0 + s) * std::exp(-s);
    }
  }
  return 0.0;
}

double correlation_derivative(KernelFamily family, double r) {
  switch (family) {
    case KernelFamily::kRbf:
      return -r * std::exp(-0.5 * r * r);
    case KernelFamily::kExponential:
      return -std::exp(-r);
    case KernelFamily::kMatern32:
      return -3.0 * r * std::exp(-kSqrt3 * r);
  }
  return 0.0;
}

double euclidean_distance(Point x, Point x2) {
  check_same_dim("euclidean_distance", x.size(), x2.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = x[k] - x2[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double kernel(const Theta& theta, KernelFamily family, Point x, Point x2, bool add_noise) {
  const double r = euclidean_distance(x, x2) / theta.lengthscale;
  double value = theta.signal_var * correlation(family, r);
  if (add_noise) value += theta.noise_var;
  return value;
}

Matrix correlation_matrix(KernelFamily family, double lengthscale, const PointSet& points) {
  const Eigen::Index n = points.rows();
  Matrix c(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    c(j, j) = 1.0;
    const Point xj = row_of(points, j);
    for (Eigen::Index i = 0; i < j; ++i) {
      const double value = correlation(family, euclidean_distance(row_of(points, i), xj) / lengthscale);
      c(i, j) = value;
      c(j, i) = value;
    }
  }
  return c;
}

Matrix gram(const Theta& theta, KernelFamily family, const PointSet& points) {
  Matrix k = correlation_matrix(family, theta.lengthscale, points);
  k *= theta.signal_var;
  k.diagonal().array() += theta.noise_var;
  return k;
}

Vector cross_vector(const Theta& theta, KernelFamily family, const PointSet& points, Point query) {
  check_same_dim("cross_vector", static_cast<std::size_t>(points.cols()), query.size());
  Vector k(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    k[i] = theta.signal_var *
           correlation(family, euclidean_distance(row_of(points, i), query) / theta.lengthscale);
  }
  return k;
}

double kernel_distance(const Theta& theta, KernelFamily family, Point x, Point x2) {
  const double c = correlation(family, euclidean_distance(x, x2) / theta.lengthscale);
  return std::sqrt(theta.signal_var) * std::sqrt(std::max(0.0, 1.0 - c));
}

}  // namespace gpnn
