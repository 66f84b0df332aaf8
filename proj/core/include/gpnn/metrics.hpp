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

#ifndef GPNN_METRICS_HPP_
#define GPNN_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gpnn/gp.hpp"

namespace gpnn {

// Test-set performance of a set of Gaussian predictive distributions.
//   mse = mean (y - mu)^2
//   nll = mean 0.5 (log s2 + (y - mu)^2 / s2 + log 2 pi)
//   cal = mean (y - mu)^2 / s2      (weak calibration; 1 is ideal)
struct MetricsReport {
  double mse = 0.0;
  double rmse = 0.0;
  double nll = 0.0;
  double cal = 0.0;
  std::size_t count = 0;

  std::string to_key_value() const;
  static std::string csv_header();
  std::string to_csv_row() const;
};

// Monte-Carlo standard errors (sample sd / sqrt(count)) of the three means.
struct MetricErrors {
  double mse = 0.0;
  double nll = 0.0;
  double cal = 0.0;
};

struct MetricsWithErrors {
  MetricsReport report;
  MetricErrors errors;
};

// Throws DimensionMismatch on length mismatch, InvalidArgument on an empty
// set or a non-positive variance.
MetricsReport evaluate(std::span<const PredictiveDistribution> predictions,
                       std::span<const double> targets);
MetricsWithErrors evaluate_with_errors(std::span<const PredictiveDistribution> predictions,
                                       std::span<const double> targets);

// n -> infinity limits of GPnn performance for true noise variance
// `noise_var`, assumed noise variance `noise_var_hat` and m neighbours.
// O(m^-2) terms are omitted.
struct LimitingMetrics {
  double mse = 0.0;  // noise_var (1 + 1/m)
  double cal = 0.0;  // noise_var / noise_var_hat
  double nll = 0.0;  // 0.5 (log(noise_var_hat (1 + 1/m)) + cal + log 2 pi)
};
LimitingMetrics theorem1_limits(double noise_var, double noise_var_hat, std::size_t m);

// Mean and sample standard deviation (n - 1) over repeated runs.
struct Aggregate {
  double mean = 0.0;
  double sd = 0.0;  // NaN when fewer than two values
  std::size_t count = 0;
};
Aggregate aggregate(std::span<const double> values);

struct AggregateReport {
  Aggregate mse;
  Aggregate rmse;
  Aggregate nll;
  Aggregate cal;
};
AggregateReport aggregate(std::span<const MetricsReport> runs);

}  // namespace gpnn

#endif  // GPNN_METRICS_HPP_
