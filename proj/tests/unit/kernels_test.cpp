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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gpnn/error.hpp"
#include "gpnn/linalg.hpp"
#include "gpnn/nn_index.hpp"

namespace gpnn {
namespace {

const Theta kTheta{1.0, 0.1, 0.9};
constexpr KernelFamily kFamilies[] = {KernelFamily::kRbf, KernelFamily::kExponential,
                                      KernelFamily::kMatern32};

PointSet random_points(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  PointSet p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = normal(rng);
  return p;
}

TEST(Correlation, UnitAtZero) {
  for (KernelFamily f : kFamilies) EXPECT_EQ(correlation(f, 0.0), 1.0);
}

TEST(Correlation, ClosedForms) {
  EXPECT_NEAR(correlation(KernelFamily::kRbf, 1.0), 0.606531, 1e-6);
  EXPECT_DOUBLE_EQ(correlation(KernelFamily::kRbf, 1.0), std::exp(-0.5));
  EXPECT_DOUBLE_EQ(correlation(KernelFamily::kExponential, 2.0), std::exp(-2.0));
  const double s = std::sqrt(3.0) * 0.7;
  EXPECT_DOUBLE_EQ(correlation(KernelFamily::kMatern32, 0.7), (1.0 + s) * std::exp(-s));
}

TEST(Correlation, NonIncreasingOnGrid) {
  for (KernelFamily f : kFamilies) {
    double prev = correlation(f, 0.0);
    for (int i = 1; i <= 20000; ++i) {
      const double c = correlation(f, i * 1e-3);
      EXPECT_LE(c, prev) << to_string(f) << " at r=" << i * 1e-3;
      EXPECT_GE(c, 0.0);
      prev = c;
    }
  }
}

TEST(Correlation, DerivativeMatchesDifference) {
  for (KernelFamily f : kFamilies) {
    for (double r : {0.1, 0.5, 1.0, 2.5}) {
      const double h = 1e-6;
      const double fd = (correlation(f, r + h) - correlation(f, r - h)) / (2 * h);
      EXPECT_NEAR(correlation_derivative(f, r), fd, 1e-7) << to_string(f);
    }
  }
}

TEST(Kernel, NoiseOnlyWhenRequested) {
  const std::vector<double> x{0.3, -1.0};
  EXPECT_DOUBLE_EQ(kernel(kTheta, KernelFamily::kRbf, x, x, true), 1.0);
  EXPECT_DOUBLE_EQ(kernel(kTheta, KernelFamily::kRbf, x, x, false), 0.9);
}

TEST(Kernel, UnitDistance) {
  const std::vector<double> a{0.0, 0.0}, b{0.6, 0.8};
  EXPECT_NEAR(kernel(kTheta, KernelFamily::kRbf, a, b, false), 0.545878, 1e-6);
}

TEST(Kernel, DimensionMismatchThrows) {
  const std::vector<double> a{0.0, 0.0}, b{1.0};
  EXPECT_THROW(kernel(kTheta, KernelFamily::kRbf, a, b, false), DimensionMismatch);
}

TEST(Kernel, BoundedBySignalVariance) {
  std::mt19937_64 rng(3);
  const PointSet p = random_points(50, 3, rng);
  for (KernelFamily f : kFamilies) {
    for (Eigen::Index i = 1; i < p.rows(); ++i) {
      EXPECT_LT(kernel(kTheta, f, row_of(p, 0), row_of(p, i), false), kTheta.signal_var);
    }
  }
}

TEST(Gram, SmallCases) {
  PointSet one(1, 2);
  one << 0.5, 0.5;
  EXPECT_DOUBLE_EQ(gram(kTheta, KernelFamily::kRbf, one)(0, 0), 1.0);

  PointSet dup(2, 2);
  dup << 0.5, 0.5, 0.5, 0.5;
  const Matrix k = gram(kTheta, KernelFamily::kRbf, dup);
  EXPECT_DOUBLE_EQ(k(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(k(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(k(0, 1), 0.9);
  EXPECT_DOUBLE_EQ(k(1, 0), 0.9);

  PointSet unit(2, 1);
  unit << 0.0, 1.0;
  EXPECT_NEAR(gram(kTheta, KernelFamily::kRbf, unit)(0, 1), 0.545878, 1e-6);
}

TEST(Gram, ExactlySymmetricAndPositiveDefinite) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 50;
    const PointSet p = random_points(n, 1 + trial % 4, rng);
    const Theta t{u(rng), u(rng) * 0.1, u(rng)};
    for (KernelFamily f : kFamilies) {
      const Matrix k = gram(t, f, p);
      EXPECT_TRUE((k.array() == k.transpose().array()).all());
      const CholeskyFactor c = cholesky(k);
      EXPECT_EQ(c.jitter_used(), 0.0);
      EXPECT_TRUE((c.lower().diagonal().array() > 0.0).all());
    }
  }
}

TEST(CrossVector, Values) {
  PointSet x(2, 1);
  x << 0.0, 1.0;
  const std::vector<double> q{0.0};
  const Vector k = cross_vector(kTheta, KernelFamily::kRbf, x, q);
  EXPECT_DOUBLE_EQ(k(0), 0.9);
  EXPECT_NEAR(k(1), 0.545878, 1e-6);

  PointSet far(1, 1);
  far << 50.0;
  const Vector kf = cross_vector(kTheta, KernelFamily::kRbf, far, q);
  EXPECT_GE(kf(0), 0.0);
  EXPECT_LT(kf(0), 1e-300);
}

TEST(KernelDistance, Values) {
  const std::vector<double> a{1.0, 2.0}, b{1.0, 3.0};
  EXPECT_EQ(kernel_distance(kTheta, KernelFamily::kRbf, a, a), 0.0);
  EXPECT_NEAR(kernel_distance(kTheta, KernelFamily::kRbf, a, b), 0.5950818484, 1e-9);
  EXPECT_DOUBLE_EQ(kernel_distance(kTheta, KernelFamily::kRbf, a, b),
                   kernel_distance(kTheta, KernelFamily::kRbf, b, a));
}

TEST(KernelDistance, OrderingMatchesEuclidean) {
  std::mt19937_64 rng(5);
  for (KernelFamily f : kFamilies) {
    const PointSet p = random_points(10, 3, rng);
    const std::vector<double> q{0.1, 0.2, -0.3};
    std::vector<std::size_t> a(10), b(10);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), 0);
    std::sort(a.begin(), a.end(), [&](auto i, auto j) {
      return euclidean_distance(row_of(p, i), q) < euclidean_distance(row_of(p, j), q);
    });
    std::stable_sort(b.begin(), b.end(), [&](auto i, auto j) {
      return kernel_distance(kTheta, f, row_of(p, i), q) < kernel_distance(kTheta, f, row_of(p, j), q);
    });
    EXPECT_EQ(a, b) << to_string(f);
  }
}

TEST(KernelDistance, KnnSetsMatchEuclideanExhaustively) {
  std::mt19937_64 rng(8);
  const Theta t{0.8, 0.1, 0.9};
  for (KernelFamily f : kFamilies) {
    const PointSet p = random_points(200, 2, rng);
    const NeighbourIndex index(p);
    for (Eigen::Index qi = 0; qi < 20; ++qi) {
      const PointSet q = random_points(1, 2, rng);
      std::vector<std::size_t> order(200);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
        return kernel_distance(t, f, row_of(p, i), row_of(q, 0)) <
               kernel_distance(t, f, row_of(p, j), row_of(q, 0));
      });
      for (std::size_t k : {1u, 5u, 20u}) {
        std::vector<std::size_t> by_rho(order.begin(), order.begin() + k);
        std::vector<std::size_t> by_euclid = index.query(row_of(q, 0), k).indices;
        std::sort(by_rho.begin(), by_rho.end());
        std::sort(by_euclid.begin(), by_euclid.end());
        EXPECT_EQ(by_rho, by_euclid);
      }
    }
  }
}

TEST(Theta, LogRoundTrip) {
  const Theta t{0.37, 0.0123, 4.5};
  const Theta back = Theta::from_log(t.to_log());
  EXPECT_NEAR(back.lengthscale / t.lengthscale, 1.0, 1e-12);
  EXPECT_NEAR(back.noise_var / t.noise_var, 1.0, 1e-12);
  EXPECT_NEAR(back.signal_var / t.signal_var, 1.0, 1e-12);
}

TEST(Theta, ValidateRejectsNonPositive) {
  EXPECT_THROW((Theta{0.0, 0.1, 0.9}.validate()), InvalidArgument);
  EXPECT_THROW((Theta{1.0, -0.1, 0.9}.validate()), InvalidArgument);
  EXPECT_THROW((Theta{1.0, 0.1, NAN}.validate()), InvalidArgument);
  EXPECT_NO_THROW(kTheta.validate());
}

TEST(KernelFamily, ParsesCaseInsensitively) {
  EXPECT_EQ(parse_kernel_family("RBF"), KernelFamily::kRbf);
  EXPECT_EQ(parse_kernel_family("Exponential"), KernelFamily::kExponential);
  EXPECT_EQ(parse_kernel_family("matern32"), KernelFamily::kMatern32);
  EXPECT_THROW(parse_kernel_family("periodic"), InvalidArgument);
}

}  // namespace
}  // namespace gpnn
