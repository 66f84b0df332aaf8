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

#include "gpnn/model.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "gpnn/error.hpp"
#include "gpnn/parallel.hpp"
#include "gpnn/random.hpp"

namespace gpnn {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PredictiveDistribution predict_from(const NeighbourIndex& index, std::span<const double> targets,
                                    const Theta& theta, KernelFamily kernel,
                                    const std::vector<std::size_t>& rows, Point query) {
  const PointSet& points = index.points();
  PointSet neighbours(static_cast<Eigen::Index>(rows.size()), points.cols());
  std::vector<double> y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    neighbours.row(static_cast<Eigen::Index>(i)) = points.row(static_cast<Eigen::Index>(rows[i]));
    y[i] = targets[rows[i]];
  }
  return predictive(theta, kernel, neighbours, y, query);
}

}  // namespace

GpnnModel::GpnnModel(Theta theta, Theta theta_hat, double alpha, KernelFamily kernel,
                     std::size_t m, WhiteningTransform whitening, PointSet train_x, Vector train_y,
                     std::size_t leaf_size)
    : GpnnModel(theta, theta_hat, alpha, kernel, m, std::move(whitening),
                NeighbourIndex(std::move(train_x), leaf_size), std::move(train_y)) {}

GpnnModel::GpnnModel(Theta theta, Theta theta_hat, double alpha, KernelFamily kernel,
                     std::size_t m, WhiteningTransform whitening, NeighbourIndex index,
                     Vector train_y)
    : theta_(theta),
      theta_hat_(theta_hat),
      alpha_(alpha),
      kernel_(kernel),
      m_(m),
      whitening_(std::move(whitening)),
      index_(std::move(index)),
      train_y_(std::move(train_y)) {
  theta_.validate();
  if (m_ == 0) throw InvalidArgument("GpnnModel: m must be >= 1");
  if (static_cast<std::size_t>(train_y_.size()) != index_.size()) {
    throw DimensionMismatch("GpnnModel (train_y)", index_.size(),
                            static_cast<std::size_t>(train_y_.size()));
  }
  if (whitening_.dim() != index_.dim()) {
    throw DimensionMismatch("GpnnModel (whitening)", index_.dim(), whitening_.dim());
  }
}

PredictiveDistribution GpnnModel::predict_whitened(Point whitened_query, const Theta& theta) const {
  const Neighbours nn = index_.query(whitened_query, m_);
  return predict_from(index_, as_span(train_y_), theta, kernel_, nn.indices, whitened_query);
}

PredictiveDistribution GpnnModel::predict_point(Point query, OutputScale scale) const {
  if (query.size() != dim()) throw DimensionMismatch("GpnnModel::predict_point", dim(), query.size());
  std::vector<double> whitened(dim());
  whitening_.apply_point(query, whitened);
  PredictiveDistribution out = predict_whitened(whitened, theta_);
  if (scale == OutputScale::kRaw) {
    out.mean = whitening_.invert_mean(out.mean);
    out.variance = whitening_.invert_variance(out.variance);
  }
  return out;
}

std::vector<PredictiveDistribution> GpnnModel::predict_batch(const PointSet& queries,
                                                             OutputScale scale) const {
  if (static_cast<std::size_t>(queries.cols()) != dim()) {
    throw DimensionMismatch("GpnnModel::predict_batch", dim(), static_cast<std::size_t>(queries.cols()));
  }
  std::vector<PredictiveDistribution> out(static_cast<std::size_t>(queries.rows()));
  parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = predict_point(row_of(queries, static_cast<Eigen::Index>(i)), scale);
    }
  });
  return out;
}

PredictiveDistribution predict_leave_self_out(const NeighbourIndex& index,
                                              std::span<const double> targets, const Theta& theta,
                                              KernelFamily kernel, std::size_t m, std::size_t row) {
  if (index.size() < 2) throw InvalidArgument("predict_leave_self_out: need at least two points");
  const Point query = row_of(index.points(), static_cast<Eigen::Index>(row));
  Neighbours nn = index.query(query, m + 1);
  auto self = std::find(nn.indices.begin(), nn.indices.end(), row);
  if (self != nn.indices.end()) {
    nn.indices.erase(self);
  } else {
    nn.indices.pop_back();
  }
  if (nn.indices.size() > m) nn.indices.resize(m);
  return predict_from(index, targets, theta, kernel, nn.indices, query);
}

FitResult fit(const Dataset& train, const FitConfig& cfg) {
  const std::size_t n = train.size();
  if (n < 2) throw InvalidArgument("fit: need at least two training points");
  if (cfg.m == 0) throw InvalidArgument("fit: m must be >= 1");

  FitTimings timings;
  auto start = Clock::now();
  WhiteningTransform whitening = fit_whitening(train);
  PointSet x = whitening.apply_x(train.x);
  Vector y = whitening.apply_y(train.y);
  timings.whitening_s = seconds_since(start);

  TrainConfig train_cfg = cfg.train;
  train_cfg.seed = cfg.seed;
  start = Clock::now();
  TrainResult training = estimate_theta(x, as_span(y), cfg.kernel, train_cfg);
  timings.estimation_s = seconds_since(start);

  start = Clock::now();
  NeighbourIndex index(std::move(x), cfg.leaf_size);
  timings.index_build_s = seconds_since(start);

  std::optional<CalibrationResult> calibration;
  std::vector<std::size_t> calibration_rows;
  Theta theta = training.theta;
  double alpha = 1.0;
  if (cfg.calibrate) {
    start = Clock::now();
    const std::size_t c = std::min(cfg.calibration_size, n);
    if (c == 0) throw InvalidArgument("fit: calibration_size must be >= 1");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    RandomStream rng(cfg.seed, StreamPurpose::kCalibration);
    for (std::size_t i = 0; i < c; ++i) {
      std::swap(perm[i], perm[i + static_cast<std::size_t>(rng.below(n - i))]);
    }
    calibration_rows.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(c));

    std::vector<double> targets(c);
    for (std::size_t i = 0; i < c; ++i) targets[i] = y[static_cast<Eigen::Index>(calibration_rows[i])];
    const Theta theta_hat = training.theta;
    calibration = calibrate(
        [&](std::size_t i) {
          return predict_leave_self_out(index, as_span(y), theta_hat, cfg.kernel, cfg.m,
                                        calibration_rows[i]);
        },
        targets, theta_hat);
    theta = calibration->theta_prime;
    alpha = calibration->alpha;
    timings.calibration_s = seconds_since(start);
  }

  GpnnModel model(theta, training.theta, alpha, cfg.kernel, cfg.m, std::move(whitening),
                  std::move(index), std::move(y));
  return FitResult{std::move(model), timings, std::move(training), calibration,
                   std::move(calibration_rows)};
}

}  // namespace gpnn
