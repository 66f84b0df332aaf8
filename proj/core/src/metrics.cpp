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

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "gpnn/error.hpp"

namespace gpnn {
namespace {

constexpr double kLog2Pi = 1.8378770664093453;

struct MeanSd {
  double mean;
  double sd;
};

MeanSd mean_sd(const std::vector<double>& v) {
  const auto n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  if (v.size() < 2) return {mean, std::numeric_limits<double>::quiet_NaN()};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

std::string MetricsReport::to_key_value() const {
  std::ostringstream out;
  out.precision(10);
  out << "count = " << count << '\n'
      << "mse = " << mse << '\n'
      << "rmse = " << rmse << '\n'
      << "nll = " << nll << '\n'
      << "cal = " << cal << '\n';
  return out.str();
}

std::string MetricsReport::csv_header() { return "count,mse,rmse,nll,cal"; }

std::string MetricsReport::to_csv_row() const {
  std::ostringstream out;
  out.precision(10);
  out << count << ',' << mse << ',' << rmse << ',' << nll << ',' << cal;
  return out.str();
}

MetricsWithErrors evaluate_with_errors(std::span<const PredictiveDistribution> predictions,
                                       std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw DimensionMismatch("evaluate (targets)", predictions.size(), targets.size());
  }
  if (predictions.empty()) throw InvalidArgument("evaluate: empty evaluation set");

  std::vector<double> e(predictions.size());
  std::vector<double> l(predictions.size());
  std::vector<double> z(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double var = predictions[i].variance;
    if (!(var > 0.0)) {
      throw InvalidArgument("evaluate: non-positive variance at point " + std::to_string(i));
    }
    const double r = targets[i] - predictions[i].mean;
    e[i] = r * r;
    z[i] = e[i] / var;
    l[i] = 0.5 * (std::log(var) + z[i] + kLog2Pi);
  }
  const MeanSd se = mean_sd(e);
  const MeanSd sl = mean_sd(l);
  const MeanSd sz = mean_sd(z);
  const double root_n = std::sqrt(static_cast<double>(predictions.size()));

  MetricsWithErrors out;
  out.report.count = predictions.size();
  out.report.mse = se.mean;
  out.report.rmse = std::sqrt(se.mean);
  out.report.nll = sl.mean;
  out.report.cal = sz.mean;
  out.errors.mse = se.sd / root_n;
  out.errors.nll = sl.sd / root_n;
  out.errors.cal = sz.sd / root_n;
  return out;
}

MetricsReport evaluate(std::span<const PredictiveDistribution> predictions,
                       std::span<const double> targets) {
  return evaluate_with_errors(predictions, targets).report;
}

LimitingMetrics theorem1_limits(double noise_var, double noise_var_hat, std::size_t m) {
  if (!(noise_var > 0.0) || !(noise_var_hat > 0.0) || m == 0) {
    throw InvalidArgument("theorem1_limits: variances and m must be positive");
  }
  const double inflation = 1.0 + 1.0 / static_cast<double>(m);
  LimitingMetrics out;
  out.mse = noise_var * inflation;
  out.cal = noise_var / noise_var_hat;
  out.nll = 0.5 * (std::log(noise_var_hat * inflation) + out.cal + kLog2Pi);
  return out;
}

Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("aggregate: no values");
  const MeanSd s = mean_sd(std::vector<double>(values.begin(), values.end()));
  return {s.mean, s.sd, values.size()};
}

AggregateReport aggregate(std::span<const MetricsReport> runs) {
  std::vector<double> mse, rmse, nll, cal;
  for (const auto& r : runs) {
    mse.push_back(r.mse);
    rmse.push_back(r.rmse);
    nll.push_back(r.nll);
    cal.push_back(r.cal);
  }
  return {aggregate(mse), aggregate(rmse), aggregate(nll), aggregate(cal)};
}

}  // namespace gpnn
