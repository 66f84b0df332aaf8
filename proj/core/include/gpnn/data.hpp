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

#ifndef GPNN_DATA_HPP_
#define GPNN_DATA_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpnn/types.hpp"

namespace gpnn {

struct Dataset {
  PointSet x;
  Vector y;
  std::vector<std::string> feature_names;
  std::string target_name;
  std::string provenance;
  std::size_t null_rows = 0;         // rows dropped for missing values
  std::size_t unparseable_rows = 0;  // rows dropped for non-numeric cells
  std::vector<std::string> warnings;

  std::size_t size() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(x.cols()); }
  std::size_t dropped_rows() const { return null_rows + unparseable_rows; }
};

// Column references are header names, or integer positions (0-based,
// negative counts from the end). Files without a header name their columns
// "0", "1", ...
struct CsvOptions {
  std::string target_column = "-1";  // empty: no target, y left empty
  std::vector<std::string> drop_columns;
  bool has_header = true;
  char delimiter = ',';
};

// Named per-dataset ingestion rule, read from a JSON recipe file of the form
// {"poletele": {"target": "total_UPDRS", "drop": ["subject#"], "header": true}}.
struct DatasetRecipe {
  std::string name;
  CsvOptions options;
  std::string note;
};

std::map<std::string, DatasetRecipe> load_recipes(const std::string& path);

// Parses a numeric CSV. Rows containing an empty / NA / NaN / "?" cell are
// dropped and counted; rows with any other non-numeric cell are dropped with
// a warning. Throws DataError on a missing target column or when no usable
// row remains.
Dataset load_csv(const std::string& path, const CsvOptions& options);

// Writes features then target, with a header row.
void save_csv(const std::string& path, const Dataset& data);

Dataset select_rows(const Dataset& data, std::span<const std::size_t> rows);

// Affine prewhitening fitted on training data only:
//   x -> M^{-1} (x - mu_x) / sqrt(d),  Sigma_x = M M^T
//   y -> (y - mu_y) / sigma_y
// Population (1/n) moments throughout.
class WhiteningTransform {
 public:
  WhiteningTransform() = default;
  WhiteningTransform(double mu_y, double sigma_y, Vector mu_x, Matrix factor, bool ridge_applied);

  static WhiteningTransform identity(std::size_t dim);
  // Restores a serialised transform without recomputing the inverse factor.
  static WhiteningTransform from_parts(double mu_y, double sigma_y, Vector mu_x, Matrix factor,
                                       Matrix factor_inverse, bool ridge_applied);

  std::size_t dim() const { return static_cast<std::size_t>(mu_x_.size()); }
  double mu_y() const { return mu_y_; }
  double sigma_y() const { return sigma_y_; }
  const Vector& mu_x() const { return mu_x_; }
  const Matrix& factor() const { return factor_; }          // M (lower triangular)
  const Matrix& factor_inverse() const { return factor_inv_; }  // M^{-1}
  bool ridge_applied() const { return ridge_applied_; }

  // Whitens one point into `out` (size dim()).
  void apply_point(Point x, std::span<double> out) const;
  PointSet apply_x(const PointSet& x) const;
  Vector apply_y(const Vector& y) const;
  double apply_y(double y) const { return (y - mu_y_) / sigma_y_; }

  PointSet invert_x(const PointSet& whitened) const;
  double invert_mean(double mean) const { return sigma_y_ * mean + mu_y_; }
  double invert_variance(double variance) const { return sigma_y_ * sigma_y_ * variance; }

  bool operator==(const WhiteningTransform&) const;

 private:
  double mu_y_ = 0.0;
  double sigma_y_ = 1.0;
  Vector mu_x_;
  Matrix factor_;
  Matrix factor_inv_;
  bool ridge_applied_ = false;
};

// Throws DataError when n < d + 1, when y is constant, or when the input
// covariance stays singular after a ridge of 1e-8 * trace(Sigma) / d.
WhiteningTransform fit_whitening(const Dataset& train);

struct WhitenedData {
  PointSet x;
  std::optional<Vector> y;
};
WhitenedData apply_whitening(const WhiteningTransform& transform, const PointSet& x,
                             const std::optional<Vector>& y = std::nullopt);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded uniform permutation; the first round(fraction * n) rows train.
SplitIndices split_indices(std::size_t n, double train_fraction, std::uint64_t seed);
std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction, std::uint64_t seed);

}  // namespace gpnn

#endif  // GPNN_DATA_HPP_
