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

#include <gtest/gtest.h>

#include <random>

#include "gpnn/error.hpp"
#include "oracles.hpp"

namespace gpnn {
namespace {

PointSet uniform_points(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u;
  PointSet p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = u(rng);
  return p;
}

void expect_matches_brute_force(const NeighbourIndex& index, const PointSet& points, Point q,
                                std::size_t k) {
  const Neighbours nn = index.query(q, k);
  ASSERT_EQ(nn.indices, oracle::brute_force_knn(points, q, k));
  for (std::size_t i = 1; i < nn.distances.size(); ++i) {
    EXPECT_LE(nn.distances[i - 1], nn.distances[i]);
  }
}

TEST(NeighbourIndex, SinglePoint) {
  PointSet p(1, 2);
  p << 3.0, 4.0;
  const NeighbourIndex index(p);
  const std::vector<double> q{0.0, 0.0};
  const Neighbours nn = index.query(q, 5);
  ASSERT_EQ(nn.indices.size(), 1u);
  EXPECT_EQ(nn.indices[0], 0u);
  EXPECT_DOUBLE_EQ(nn.distances[0], 5.0);
}

TEST(NeighbourIndex, MatchesBruteForceLowDimension) {
  std::mt19937_64 rng(1);
  const PointSet p = uniform_points(1000, 5, rng);
  const NeighbourIndex index(p);
  for (int i = 0; i < 200; ++i) {
    const PointSet q = uniform_points(1, 5, rng);
    expect_matches_brute_force(index, p, row_of(q, 0), 1 + i % 50);
  }
}

TEST(NeighbourIndex, MatchesBruteForceD10) {
  std::mt19937_64 rng(2);
  const PointSet p = uniform_points(2000, 10, rng);
  const NeighbourIndex index(p);
  for (int i = 0; i < 500; ++i) {
    const PointSet q = uniform_points(1, 10, rng);
    expect_matches_brute_force(index, p, row_of(q, 0), 20);
  }
}

TEST(NeighbourIndex, RandomDatasetsAcrossDimensions) {
  std::mt19937_64 rng(3);
  const std::size_t dims[] = {1, 2, 10, 50};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = dims[trial % 4];
    const std::size_t n = 1 + (rng() % 2000);
    const PointSet p = uniform_points(n, d, rng);
    const NeighbourIndex index(p, 1 + trial % 60);
    for (int i = 0; i < 5; ++i) {
      const PointSet q = uniform_points(1, d, rng);
      expect_matches_brute_force(index, p, row_of(q, 0), 1 + rng() % 40);
    }
  }
}

TEST(NeighbourIndex, TrainingPointFindsItself) {
  std::mt19937_64 rng(4);
  const PointSet p = uniform_points(300, 3, rng);
  const NeighbourIndex index(p);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const Neighbours nn = index.query(row_of(p, i), 1);
    EXPECT_EQ(nn.indices[0], static_cast<std::size_t>(i));
    EXPECT_EQ(nn.distances[0], 0.0);
  }
}

TEST(NeighbourIndex, KAtLeastNReturnsAll) {
  std::mt19937_64 rng(5);
  const PointSet p = uniform_points(17, 2, rng);
  const NeighbourIndex index(p, 4);
  const std::vector<double> q{0.5, 0.5};
  EXPECT_EQ(index.query(q, 17).indices.size(), 17u);
  EXPECT_EQ(index.query(q, 100).indices, oracle::brute_force_knn(p, q, 17));
}

TEST(NeighbourIndex, DuplicatesAndTiesBreakByIndex) {
  // Grid with many exact ties and duplicate rows.
  PointSet p(60, 2);
  for (Eigen::Index i = 0; i < 60; ++i) {
    p(i, 0) = static_cast<double>(i % 5);
    p(i, 1) = static_cast<double>((i / 5) % 4);
  }
  const NeighbourIndex index(p, 3);
  const std::vector<double> q{2.0, 1.0};
  for (std::size_t k = 1; k <= 60; ++k) {
    EXPECT_EQ(index.query(q, k).indices, oracle::brute_force_knn(p, q, k));
  }
  const std::vector<double> exact{2.0, 1.0};
  const Neighbours nn = index.query(exact, 3);
  EXPECT_EQ(nn.distances[2], 0.0);  // all three duplicates before anything farther
}

TEST(NeighbourIndex, Deterministic) {
  std::mt19937_64 rng(6);
  const PointSet p = uniform_points(500, 4, rng);
  const NeighbourIndex a(p), b(p);
  const std::vector<double> q{0.1, 0.9, 0.4, 0.3};
  EXPECT_EQ(a.query(q, 30).indices, b.query(q, 30).indices);
  EXPECT_EQ(a.query(q, 30).distances, b.query(q, 30).distances);
}

TEST(NeighbourIndex, Errors) {
  EXPECT_THROW(NeighbourIndex(PointSet(0, 2)), InvalidArgument);
  PointSet p(3, 2);
  p.setZero();
  EXPECT_THROW(NeighbourIndex(p, 0), InvalidArgument);
  const NeighbourIndex index(p);
  EXPECT_THROW(index.query(std::vector<double>{1.0}, 1), DimensionMismatch);
}

}  // namespace
}  // namespace gpnn
