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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace gpnn {
namespace {

const Theta kTheta{1.0, 0.1, 0.9};
constexpr KernelFamily kFamilies[] = {KernelFamily::kRbf, KernelFamily::kExponential,
                                      KernelFamily::kMatern32};

struct Problem {
  PointSet x;
  Vector y;
  Vector query;
};

Problem random_problem(std::size_t m, std::size_t d, std::mt19937_64& rng, double spread = 1.0) {
  std::normal_distribution<double> normal;
  Problem p{PointSet(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d)),
            Vector(static_cast<Eigen::Index>(m)), Vector(static_cast<Eigen::Index>(d))};
  for (Eigen::Index i = 0; i < p.x.size(); ++i) p.x.data()[i] = spread * normal(rng);
  for (auto& v : p.y) v = normal(rng);
  for (auto& v : p.query) v = spread * normal(rng);
  return p;
}

Theta random_theta(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(0.2), std::log(3.0));
  std::uniform_real_distribution<double> un(std::log(0.01), std::log(0.5));
  return Theta{std::exp(u(rng)), std::exp(un(rng)), std::exp(u(rng))};
}

TEST(Predictive, SingleCoincidentNeighbour) {
  PointSet x(1, 2);
  x << 0.2, 0.4;
  const std::vector<double> y{1.0}, q{0.2, 0.4};
  const PredictiveDistribution p = predictive(kTheta, KernelFamily::kRbf, x, y, q);
  EXPECT_NEAR(p.mean, 0.9, 1e-15);
  EXPECT_NEAR(p.variance, 0.19, 1e-15);
  EXPECT_FALSE(p.clamped);
}

TEST(Predictive, FarNeighbourRecoversPrior) {
  PointSet x(1, 1);
  x << 100.0;
  const std::vector<double> y{3.0}, q{0.0};
  const PredictiveDistribution p = predictive(kTheta, KernelFamily::kRbf, x, y, q);
  EXPECT_NEAR(p.mean, 0.0, 1e-12);
  EXPECT_NEAR(p.variance, 1.0, 1e-12);
}

TEST(Predictive, MatchesAdjugateOracleForSmallM) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 3;
    const Problem pr = random_problem(m, 2, rng);
    const Theta t = random_theta(rng);
    for (KernelFamily f : kFamilies) {
      const PredictiveDistribution p = predictive(t, f, pr.x, as_span(pr.y), as_span(pr.query));
      const auto ref = oracle::gp_predictive(
          oracle::to_dense(gram(t, f, pr.x)),
          [&] {
            const Vector k = cross_vector(t, f, pr.x, as_span(pr.query));
            return std::vector<double>(k.data(), k.data() + k.size());
          }(),
          t.signal_var + t.noise_var, {pr.y.data(), pr.y.data() + pr.y.size()});
      EXPECT_NEAR(p.mean, ref.mean, 1e-10);
      EXPECT_NEAR(p.variance, std::max(ref.variance, t.noise_var * (1 - 1e-12)), 1e-10);
    }
  }
}

TEST(Predictive, VarianceBounds) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = 1 + trial % 12;
    const Problem pr = random_problem(m, 1 + trial % 3, rng, 0.5);
    const Theta t = random_theta(rng);
    const KernelFamily f = kFamilies[trial % 3];
    const PredictiveDistribution p = predictive(t, f, pr.x, as_span(pr.y), as_span(pr.query));
    ASSERT_GE(p.variance, t.noise_var * (1 - 1e-12));
    ASSERT_LE(p.variance, t.signal_var + t.noise_var + 1e-9);
  }
}

TEST(Predictive, VarianceScalingLeavesMeanUnchanged) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Problem pr = random_problem(10, 3, rng);
    const Theta t = random_theta(rng);
    for (double k : {0.3, 1.7, 12.0}) {
      const auto a = predictive(t, KernelFamily::kRbf, pr.x, as_span(pr.y), as_span(pr.query));
      const auto b = predictive(t.scaled_variances(k), KernelFamily::kRbf, pr.x, as_span(pr.y),
                                as_span(pr.query));
      EXPECT_NEAR(a.mean, b.mean, 1e-10);
      EXPECT_NEAR(b.variance / (k * a.variance), 1.0, 1e-10);
    }
  }
}

TEST(Predictive, DuplicateNeighbourNeverIncreasesVariance) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> size(1, 19);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = static_cast<std::size_t>(size(rng));
    const Problem pr = random_problem(m, 2, rng, 0.7);
    const Theta t = random_theta(rng);
    const auto before = predictive(t, KernelFamily::kMatern32, pr.x, as_span(pr.y), as_span(pr.query));
    PointSet x2(pr.x.rows() + 1, pr.x.cols());
    x2.topRows(pr.x.rows()) = pr.x;
    x2.row(pr.x.rows()) = pr.x.row(static_cast<Eigen::Index>(trial) % pr.x.rows());
    Vector y2(pr.y.size() + 1);
    y2 << pr.y, 0.25;
    const auto after = predictive(t, KernelFamily::kMatern32, x2, as_span(y2), as_span(pr.query));
    EXPECT_LE(after.variance, before.variance + 1e-12);
  }
}

TEST(Nll, ScalarCases) {
  PointSet x(1, 3);
  x << 1.0, -2.0, 0.5;
  EXPECT_NEAR(log_marginal_nll(kTheta, KernelFamily::kRbf, x, std::vector<double>{0.0}), 0.918939,
              1e-6);
  EXPECT_NEAR(log_marginal_nll(kTheta, KernelFamily::kRbf, x, std::vector<double>{1.0}), 1.418939,
              1e-6);
}

TEST(Nll, MatchesDenseOracle) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const Problem pr = random_problem(5, 2, rng);
    const Theta t = random_theta(rng);
    for (KernelFamily f : kFamilies) {
      const double got = log_marginal_nll(t, f, pr.x, as_span(pr.y));
      const double ref = oracle::gp_nll(oracle::to_dense(gram(t, f, pr.x)),
                                        {pr.y.data(), pr.y.data() + pr.y.size()});
      EXPECT_NEAR(got / ref, 1.0, 1e-9);
    }
  }
}

double nll_at_log(const std::vector<double>& log_theta, KernelFamily f, const Problem& pr) {
  return log_marginal_nll(Theta::from_log({log_theta[0], log_theta[1], log_theta[2]}), f, pr.x,
                          as_span(pr.y));
}

TEST(NllGradient, MatchesCentralDifferencesS8) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const Problem pr = random_problem(8, 2, rng);
    const Theta t = random_theta(rng);
    for (KernelFamily f : kFamilies) {
      const auto g = nll_gradient(t, f, pr.x, as_span(pr.y));
      const auto lt = t.to_log();
      double worst = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const double fd = oracle::central_difference(
            [&](const std::vector<double>& v) { return nll_at_log(v, f, pr); },
            {lt[0], lt[1], lt[2]}, i, 1e-5);
        worst = std::max(worst, std::abs(g[i] - fd) / std::max(std::abs(fd), 1e-3));
      }
      EXPECT_LT(worst, 1e-5) << to_string(f);
    }
  }
}

TEST(NllGradient, CombinedEvaluationAgrees) {
  std::mt19937_64 rng(27);
  const Problem pr = random_problem(12, 3, rng);
  const Theta t = random_theta(rng);
  const NllEvaluation e = nll_with_gradient(t, KernelFamily::kRbf, pr.x, as_span(pr.y));
  const auto g = nll_gradient(t, KernelFamily::kRbf, pr.x, as_span(pr.y));
  EXPECT_NEAR(e.loss, log_marginal_nll(t, KernelFamily::kRbf, pr.x, as_span(pr.y)), 1e-10);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.gradient[i], g[i], 1e-10);
}

TEST(NllGradient, LargeSignalVarianceWithZeroTargets) {
  std::mt19937_64 rng(28);
  Problem pr = random_problem(6, 2, rng);
  pr.y.setZero();
  const auto g = nll_gradient(Theta{1.0, 0.1, 1e4}, KernelFamily::kRbf, pr.x, as_span(pr.y));
  EXPECT_GT(g[2], 0.0);
}

TEST(NllGradient, ScaleEquivariantInLengthscale) {
  std::mt19937_64 rng(29);
  const Problem pr = random_problem(7, 2, rng);
  const PointSet scaled = 2.0 * pr.x;
  const auto a = nll_gradient(Theta{0.8, 0.1, 0.9}, KernelFamily::kRbf, pr.x, as_span(pr.y));
  const auto b = nll_gradient(Theta{1.6, 0.1, 0.9}, KernelFamily::kRbf, scaled, as_span(pr.y));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
}

}  // namespace
}  // namespace gpnn
