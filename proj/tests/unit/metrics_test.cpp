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


#include "gpnn/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gpnn/error.hpp"

namespace gpnn {
namespace {

TEST(Evaluate, PerfectPredictions) {
  const std::vector<PredictiveDistribution> p{{1.0, 1.0, false}, {-2.0, 1.0, false}};
  const std::vector<double> y{1.0, -2.0};
  const MetricsReport r = evaluate(p, y);
  EXPECT_EQ(r.mse, 0.0);
  EXPECT_EQ(r.cal, 0.0);
  EXPECT_NEAR(r.nll, 0.918939, 1e-6);
  EXPECT_EQ(r.count, 2u);
}

TEST(Evaluate, UnitResidual) {
  const std::vector<PredictiveDistribution> p{{2.0, 1.0, false}};
  const std::vector<double> y{3.0};
  const MetricsReport r = evaluate(p, y);
  EXPECT_EQ(r.mse, 1.0);
  EXPECT_EQ(r.cal, 1.0);
  EXPECT_NEAR(r.nll, 1.418939, 1e-6);
  EXPECT_EQ(r.rmse, std::sqrt(r.mse));
}

TEST(Evaluate, Errors) {
  const std::vector<PredictiveDistribution> p{{0.0, 1.0, false}};
  EXPECT_THROW(evaluate(p, std::vector<double>{}), DimensionMismatch);
  const std::vector<PredictiveDistribution> bad{{0.0, 0.0, false}};
  EXPECT_THROW(evaluate(bad, std::vector<double>{1.0}), InvalidArgument);
  EXPECT_THROW(evaluate(std::vector<PredictiveDistribution>{}, std::vector<double>{}),
               InvalidArgument);
}

std::pair<std::vector<PredictiveDistribution>, std::vector<double>> random_case(std::size_t n,
                                                                                 unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<PredictiveDistribution> p;
  std::vector<double> y;
  for (std::size_t i = 0; i < n; ++i) {
    p.push_back({normal(rng), u(rng), false});
    y.push_back(normal(rng));
  }
  return {p, y};
}

TEST(Evaluate, PermutationInvariant) {
  auto [p, y] = random_case(200, 1);
  const MetricsReport a = evaluate(p, y);
  std::vector<std::size_t> order(200);
  for (std::size_t i = 0; i < 200; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), std::mt19937_64(2));
  std::vector<PredictiveDistribution> p2;
  std::vector<double> y2;
  for (std::size_t i : order) {
    p2.push_back(p[i]);
    y2.push_back(y[i]);
  }
  const MetricsReport b = evaluate(p2, y2);
  EXPECT_NEAR(a.mse, b.mse, 1e-14);
  EXPECT_NEAR(a.nll, b.nll, 1e-14);
  EXPECT_NEAR(a.cal, b.cal, 1e-14);
}

TEST(Evaluate, CalScalesInverselyWithVariance) {
  auto [p, y] = random_case(100, 3);
  const double base = evaluate(p, y).cal;
  for (double a : {0.5, 2.0, 7.0}) {
    auto q = p;
    for (auto& d : q) d.variance *= a;
    EXPECT_NEAR(evaluate(q, y).cal, base / a, 1e-12 * base);
  }
}

TEST(EvaluateWithErrors, StandardErrors) {
  const std::vector<PredictiveDistribution> p(4, {0.0, 1.0, false});
  const std::vector<double> y{1.0, -1.0, 2.0, 0.0};
  const MetricsWithErrors r = evaluate_with_errors(p, y);
  // e = {1, 1, 4, 0}: mean 1.5, sample sd sqrt(3)
  EXPECT_DOUBLE_EQ(r.report.mse, 1.5);
  EXPECT_NEAR(r.errors.mse, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(r.errors.cal, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(r.errors.nll, 0.5 * std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(LimitingMetrics, KnownValues) {
  const LimitingMetrics a = theorem1_limits(0.1, 0.1, 400);
  EXPECT_NEAR(a.mse, 0.10025, 1e-15);
  EXPECT_EQ(a.cal, 1.0);
  EXPECT_NEAR(a.nll, 0.5 * (std::log(0.10025) + 1.0 + std::log(2 * M_PI)), 1e-15);
  EXPECT_NEAR(a.nll, 0.2688944, 1e-7);
  for (std::size_t m : {1u, 5u, 100u}) EXPECT_EQ(theorem1_limits(0.1, 0.2, m).cal, 0.5);
  EXPECT_NEAR(theorem1_limits(0.1, 0.2, 100).nll,
              0.5 * (std::log(0.2 * 1.01) + 0.5 + std::log(2 * M_PI)), 1e-15);
}

TEST(LimitingMetrics, NllMinimisedAtTrueNoise) {
  for (double sigma2 : {0.05, 0.1, 0.4}) {
    double best = INFINITY, arg = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double hat = sigma2 * i / 200.0;
      const double v = theorem1_limits(sigma2, hat, 100).nll;
      if (v < best) {
        best = v;
        arg = hat;
      }
    }
    // argmin of log(h) + s/h is h = s (the (1 + 1/m) factor is additive in log).
    EXPECT_NEAR(arg, sigma2, sigma2 / 200.0);
  }
}

TEST(Aggregate, MeanAndSampleSd) {
  const std::vector<double> one{2.0};
  const Aggregate a = aggregate(one);
  EXPECT_EQ(a.mean, 2.0);
  EXPECT_TRUE(std::isnan(a.sd));
  const std::vector<double> three{1.0, 2.0, 3.0};
  const Aggregate b = aggregate(three);
  EXPECT_EQ(b.mean, 2.0);
  EXPECT_EQ(b.sd, 1.0);
  EXPECT_EQ(b.count, 3u);
}

TEST(MetricsReport, Serialisation) {
  MetricsReport r{0.25, 0.5, -0.1, 1.2, 10};
  EXPECT_EQ(MetricsReport::csv_header(), "count,mse,rmse,nll,cal");
  EXPECT_EQ(r.to_csv_row(), "10,0.25,0.5,-0.1,1.2");
  EXPECT_NE(r.to_key_value().find("rmse = 0.5"), std::string::npos);
}

}  // namespace
}  // namespace gpnn
