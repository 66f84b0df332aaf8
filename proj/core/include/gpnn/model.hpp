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

#ifndef GPNN_MODEL_HPP_
#define GPNN_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpnn/calibrate.hpp"
#include "gpnn/data.hpp"
#include "gpnn/gp.hpp"
#include "gpnn/kernels.hpp"
#include "gpnn/nn_index.hpp"
#include "gpnn/train.hpp"
#include "gpnn/types.hpp"

namespace gpnn {

inline constexpr std::size_t kDefaultNeighbours = 400;
inline constexpr std::size_t kDefaultCalibrationSize = 1000;

struct FitConfig {
  TrainConfig train;  // train.seed is overwritten by `seed`
  KernelFamily kernel = KernelFamily::kRbf;
  std::size_t m = kDefaultNeighbours;
  std::size_t calibration_size = kDefaultCalibrationSize;  // c, clamped to n
  bool calibrate = true;
  std::uint64_t seed = 0;
  std::size_t leaf_size = kDefaultLeafSize;
};

enum class OutputScale {
  kRaw,         // original target units
  kNormalized,  // whitened target units (mean 0, variance 1 on train)
};

// A fitted GPnn regressor: hyperparameters, prewhitening, and the whitened
// training set with its neighbour index. Immutable; safe to share between
// threads.
class GpnnModel {
 public:
  GpnnModel(Theta theta, Theta theta_hat, double alpha, KernelFamily kernel, std::size_t m,
            WhiteningTransform whitening, PointSet train_x, Vector train_y,
            std::size_t leaf_size = kDefaultLeafSize);
  GpnnModel(Theta theta, Theta theta_hat, double alpha, KernelFamily kernel, std::size_t m,
            WhiteningTransform whitening, NeighbourIndex index, Vector train_y);

  const Theta& theta() const { return theta_; }          // post-calibration
  const Theta& theta_hat() const { return theta_hat_; }  // phase-1 estimate
  double alpha() const { return alpha_; }
  KernelFamily kernel() const { return kernel_; }
  std::size_t m() const { return m_; }
  std::size_t dim() const { return index_.dim(); }
  std::size_t size() const { return index_.size(); }
  std::size_t leaf_size() const { return index_.leaf_size(); }
  const WhiteningTransform& whitening() const { return whitening_; }
  const PointSet& train_x() const { return index_.points(); }
  const Vector& train_y() const { return train_y_; }
  const NeighbourIndex& index() const { return index_; }

  // Whitens the query, conditions on its min(m, n) nearest training points
  // and maps the result back to `scale`.
  PredictiveDistribution predict_point(Point query, OutputScale scale = OutputScale::kRaw) const;

  // Same as predict_point for each row, in parallel, in row order.
  std::vector<PredictiveDistribution> predict_batch(const PointSet& queries,
                                                    OutputScale scale = OutputScale::kRaw) const;

  // Prediction at an already-whitened query under an arbitrary theta, in
  // normalised units.
  PredictiveDistribution predict_whitened(Point whitened_query, const Theta& theta) const;

 private:
  Theta theta_;
  Theta theta_hat_;
  double alpha_;
  KernelFamily kernel_;
  std::size_t m_;
  WhiteningTransform whitening_;
  NeighbourIndex index_;
  Vector train_y_;
};

// GPnn prediction for training row `row` with that row removed from its
// own neighbour set: queries m + 1 neighbours and drops the self match (or
// the farthest one when the row is hidden behind tied duplicates).
PredictiveDistribution predict_leave_self_out(const NeighbourIndex& index,
                                              std::span<const double> targets, const Theta& theta,
                                              KernelFamily kernel, std::size_t m, std::size_t row);

struct FitTimings {
  double whitening_s = 0.0;
  double estimation_s = 0.0;
  double index_build_s = 0.0;
  double calibration_s = 0.0;
  double total() const { return whitening_s + estimation_s + index_build_s + calibration_s; }
};

struct FitResult {
  GpnnModel model;
  FitTimings timings;
  TrainResult training;
  std::optional<CalibrationResult> calibration;
  std::vector<std::size_t> calibration_rows;
};

// whiten -> estimate theta on a random subset -> build neighbour index ->
// optionally recalibrate on a random size-c subset (leave-self-out).
FitResult fit(const Dataset& train, const FitConfig& cfg);

// Binary model file (little-endian, magic + format version + CRC-32) plus a
// plain-text "<path>.meta" sidecar. load_model rebuilds the neighbour index
// and throws VersionMismatch / CorruptFile without returning a partial model.
inline constexpr std::uint32_t kModelFormatVersion = 1;
void save_model(const GpnnModel& model, const std::string& path);
GpnnModel load_model(const std::string& path);

}  // namespace gpnn

#endif  // GPNN_MODEL_HPP_
