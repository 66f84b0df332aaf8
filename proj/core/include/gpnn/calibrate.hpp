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

#ifndef GPNN_CALIBRATE_HPP_
#define GPNN_CALIBRATE_HPP_

#include <cstddef>
#include <functional>
#include <span>

#include "gpnn/gp.hpp"
#include "gpnn/kernels.hpp"

namespace gpnn {

struct CalibrationResult {
  double alpha = 1.0;
  Theta theta_prime;  // (l, alpha * noise_var, alpha * signal_var)
  std::size_t size = 0;
};

// alpha = mean over the calibration set of (y - mu)^2 / sigma^2. Scaling both
// variance parameters by alpha leaves every predictive mean unchanged and
// multiplies every predictive variance by alpha, so the calibration
// statistic on the same set becomes exactly 1.
CalibrationResult calibrate(std::span<const PredictiveDistribution> predictions,
                            std::span<const double> targets, const Theta& theta_hat);

// Same, with predictions produced on demand: predict(i) must return the
// predictive distribution for calibration point i under theta_hat.
// Predictions run in parallel; the reduction order is fixed.
using CalibrationPredictor = std::function<PredictiveDistribution(std::size_t)>;
CalibrationResult calibrate(const CalibrationPredictor& predict, std::span<const double> targets,
                            const Theta& theta_hat);

}  // namespace gpnn

#endif  // GPNN_CALIBRATE_HPP_
