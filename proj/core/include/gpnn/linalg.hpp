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

#ifndef GPNN_LINALG_HPP_
#define GPNN_LINALG_HPP_

#include <utility>

#include <Eigen/Cholesky>

#include "gpnn/types.hpp"

namespace gpnn {

// Lower Cholesky factor of A + jitter_used * I.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(Eigen::LLT<Matrix> llt, double jitter_used)
      : llt_(std::move(llt)), jitter_used_(jitter_used) {}

  Matrix lower() const { return llt_.matrixL(); }
  double jitter_used() const { return jitter_used_; }
  Eigen::Index size() const { return llt_.rows(); }

  // log|A + jitter I| = 2 * sum(log L_ii).
  double log_determinant() const;

  // L^{-1} b (forward substitution only).
  Vector solve_lower(const Vector& b) const;

  const Eigen::LLT<Matrix>& llt() const { return llt_; }

 private:
  Eigen::LLT<Matrix> llt_;
  double jitter_used_;
};

// Relative jitter levels tried in order; each is multiplied by mean(diag(A)).
inline constexpr double kJitterLadder[] = {0.0, 1e-10, 1e-8, 1e-6};

// Factorises A, escalating through the jitter ladder until every pivot is
// positive. Throws NotPositiveDefinite if all levels fail. Only the lower
// triangle of A is read.
CholeskyFactor cholesky(const Matrix& a);

// A^{-1} b via forward and back substitution. Throws DimensionMismatch on
// non-conformable shapes.
Vector solve(const CholeskyFactor& factor, const Vector& b);
Matrix solve(const CholeskyFactor& factor, const Matrix& b);

}  // namespace gpnn

#endif  // GPNN_LINALG_HPP_
