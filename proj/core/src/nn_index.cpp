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

#include "gpnn/nn_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>

#include "gpnn/error.hpp"

namespace gpnn {
namespace {

struct Candidate {
  double dist_sq;
  std::size_t index;
  bool operator<(const Candidate& o) const {
    return dist_sq < o.dist_sq || (dist_sq == o.dist_sq && index < o.index);
  }
};

double squared_distance(const double* a, const double* b, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

NeighbourIndex::NeighbourIndex(PointSet points, std::size_t leaf_size)
    : points_(std::move(points)), leaf_size_(leaf_size) {
  if (points_.rows() == 0 || points_.cols() == 0) {
    throw InvalidArgument("NeighbourIndex: empty point set");
  }
  if (leaf_size_ == 0) throw InvalidArgument("NeighbourIndex: leaf_size must be >= 1");
  if (points_.rows() > std::numeric_limits<std::int32_t>::max()) {
    throw InvalidArgument("NeighbourIndex: too many points");
  }

  const auto n = static_cast<std::uint32_t>(points_.rows());
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  nodes_.reserve(2 * (n / leaf_size_ + 1));
  build(0, n);

  ordered_.resize(points_.rows(), points_.cols());
  for (std::uint32_t i = 0; i < n; ++i) ordered_.row(i) = points_.row(order_[i]);
}

std::int32_t NeighbourIndex::build(std::uint32_t begin, std::uint32_t end) {
  const std::size_t dim = this->dim();
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({begin, end, -1, -1});
  box_lo_.resize(box_lo_.size() + dim, std::numeric_limits<double>::infinity());
  box_hi_.resize(box_hi_.size() + dim, -std::numeric_limits<double>::infinity());

  double* lo = box_lo_.data() + static_cast<std::size_t>(id) * dim;
  double* hi = box_hi_.data() + static_cast<std::size_t>(id) * dim;
  for (std::uint32_t i = begin; i < end; ++i) {
    const double* p = points_.data() + static_cast<std::size_t>(order_[i]) * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }

  if (end - begin <= leaf_size_) return id;

  std::size_t split_dim = 0;
  double widest = -1.0;
  for (std::size_t k = 0; k < dim; ++k) {
    if (hi[k] - lo[k] > widest) {
      widest = hi[k] - lo[k];
      split_dim = k;
    }
  }
  if (widest <= 0.0) return id;  // all points coincide

  const std::uint32_t mid = begin + (end - begin) / 2;
  const PointSet& pts = points_;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&pts, split_dim](std::uint32_t a, std::uint32_t b) {
                     const double va = pts(a, static_cast<Eigen::Index>(split_dim));
                     const double vb = pts(b, static_cast<Eigen::Index>(split_dim));
                     return va < vb || (va == vb && a < b);
                   });

  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

double NeighbourIndex::box_distance_sq(std::size_t node, const double* query) const {
  const std::size_t dim = this->dim();
  const double* lo = box_lo_.data() + node * dim;
  const double* hi = box_hi_.data() + node * dim;
  double sum = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    double gap = 0.0;
    if (query[k] < lo[k]) {
      gap = lo[k] - query[k];
    } else if (query[k] > hi[k]) {
      gap = query[k] - hi[k];
    }
    sum += gap * gap;
  }
  return sum;
}

Neighbours NeighbourIndex::query(Point query, std::size_t k) const {
  if (query.size() != dim()) throw DimensionMismatch("NeighbourIndex::query", dim(), query.size());
  if (k == 0) throw InvalidArgument("NeighbourIndex::query: k must be >= 1");
  k = std::min(k, size());
  const std::size_t dim = this->dim();
  const double* q = query.data();

  std::priority_queue<Candidate> best;  // max-heap on (dist, index)
  auto worst = [&]() {
    return best.size() < k ? std::numeric_limits<double>::infinity() : best.top().dist_sq;
  };

  // Depth-first traversal, nearer child first. Ties in distance must still be
  // explored (a lower index may tie the current worst), hence the strict `>`.
  std::vector<std::pair<double, std::int32_t>> stack;
  stack.reserve(64);
  stack.emplace_back(box_distance_sq(0, q), 0);
  while (!stack.empty()) {
    const auto [bound, id] = stack.back();
    stack.pop_back();
    if (bound > worst()) continue;
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const double d2 = squared_distance(ordered_.data() + static_cast<std::size_t>(i) * dim, q, dim);
        const Candidate c{d2, order_[i]};
        if (best.size() < k) {
          best.push(c);
        } else if (c < best.top()) {
          best.pop();
          best.push(c);
        }
      }
      continue;
    }
    const double dl = box_distance_sq(static_cast<std::size_t>(node.left), q);
    const double dr = box_distance_sq(static_cast<std::size_t>(node.right), q);
    // Push the farther child first so the nearer one is popped next.
    if (dl <= dr) {
      stack.emplace_back(dr, node.right);
      stack.emplace_back(dl, node.left);
    } else {
      stack.emplace_back(dl, node.left);
      stack.emplace_back(dr, node.right);
    }
  }

  Neighbours out;
  out.indices.resize(best.size());
  out.distances.resize(best.size());
  for (std::size_t i = best.size(); i-- > 0;) {
    out.indices[i] = best.top().index;
    out.distances[i] = std::sqrt(best.top().dist_sq);
    best.pop();
  }
  return out;
}

}  // namespace gpnn
