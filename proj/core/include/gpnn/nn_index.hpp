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

#ifndef GPNN_NN_INDEX_HPP_
#define GPNN_NN_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gpnn/types.hpp"

namespace gpnn {

struct Neighbours {
  std::vector<std::size_t> indices;  // training row indices
  std::vector<double> distances;     // Euclidean, nondecreasing
};

inline constexpr std::size_t kDefaultLeafSize = 40;

// Exact k-nearest-neighbour search over a fixed point set under Euclidean
// distance. Results are ordered by (distance, training index), so ties are
// broken towards the lower index and every query is deterministic.
//
// Immutable after construction; concurrent queries are safe.
class NeighbourIndex {
 public:
  // kd-tree with median splits on the coordinate of widest spread. Throws
  // InvalidArgument on an empty point set or zero leaf size.
  explicit NeighbourIndex(PointSet points, std::size_t leaf_size = kDefaultLeafSize);

  // The min(k, size()) nearest points to `query`. Throws DimensionMismatch.
  Neighbours query(Point query, std::size_t k) const;

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }
  std::size_t leaf_size() const { return leaf_size_; }
  const PointSet& points() const { return points_; }

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;   // -1 for leaves
    std::int32_t right = -1;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);
  double box_distance_sq(std::size_t node, const double* query) const;

  PointSet points_;
  std::size_t leaf_size_;
  std::vector<std::uint32_t> order_;  // permutation of row indices, leaf-contiguous
  PointSet ordered_;                  // points_ rows in order_ sequence
  std::vector<Node> nodes_;
  std::vector<double> box_lo_;  // nodes_.size() * dim
  std::vector<double> box_hi_;
};

}  // namespace gpnn

#endif  // GPNN_NN_INDEX_HPP_
