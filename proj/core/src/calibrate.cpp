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

#include "gpnn/calibrate.hpp"

#include <vector>

#include "gpnn/error.hpp"
#include "gpnn/parallel.hpp"

namespace gpnn {

CalibrationResult calibrate(std::span<const PredictiveDistribution> predictions,
                            std::span<const double> targets, const Theta& theta_hat) {
  if (predictions.empty()) throw InvalidArgument("calibrate: empty calibration set");
  if (predictions.size() != targets.size()) {
    throw DimensionMismatch("calibrate (targets)", predictions.size(), targets.size());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double var = predictions[i].variance;
    if (!(var > 0.0)) {
      throw InvalidArgument("calibrate: non-positive predictive variance at point " +
                            std::to_string(i));
    }
    const double r = targets[i] - predictions[i].mean;
    sum += r * r / var;
  }
  CalibrationResult out;
  out.size = predictions.size();
  out.alpha = sum / static_cast<double>(out.size);
  if (!(out.alpha > 0.0)) {
    throw InvalidArgument("calibrate: calibration factor is zero (all residuals vanish)");
  }
  out.theta_prime = theta_hat.scaled_variances(out.alpha);
  return out;
}

CalibrationResult calibrate(const CalibrationPredictor& predict, std::span<const double> targets,
                            const Theta& theta_hat) {
  std::vector<PredictiveDistribution> predictions(targets.size());
  parallel_for(targets.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) predictions[i] = predict(i);
  });
  return calibrate(predictions, targets, theta_hat);
}

}  // namespace gpnn
