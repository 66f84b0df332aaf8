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

#ifndef GPNN_TYPES_HPP_
#define GPNN_TYPES_HPP_

#include <cstddef>
#include <span>

#include <Eigen/Core>

namespace gpnn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Point sets are stored one point per row, row-major, so that a single point
// is a contiguous span of `cols()` doubles.
using PointSet = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Point = std::span<const double>;

inline Point row_of(const PointSet& points, Eigen::Index i) {
  return {points.data() + i * points.cols(), static_cast<std::size_t>(points.cols())};
}

inline Eigen::Map<const Vector> as_vector(Point p) {
  return {p.data(), static_cast<Eigen::Index>(p.size())};
}

inline std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace gpnn

#endif  // GPNN_TYPES_HPP_
