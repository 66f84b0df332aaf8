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

#include "gpnn/linalg.hpp"

#include <cmath>
#include <string>

#include "gpnn/error.hpp"

namespace gpnn {

double CholeskyFactor::log_determinant() const {
  return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

Vector CholeskyFactor::solve_lower(const Vector& b) const {
  if (b.size() != size()) {
    throw DimensionMismatch("CholeskyFactor::solve_lower", static_cast<std::size_t>(size()),
                            static_cast<std::size_t>(b.size()));
  }
  return llt_.matrixL().solve(b);
}

CholeskyFactor cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("cholesky (square matrix)", static_cast<std::size_t>(a.rows()),
                            static_cast<std::size_t>(a.cols()));
  }
  const Eigen::Index n = a.rows();
  const double scale = n > 0 ? a.diagonal().mean() : 0.0;

  for (double level : kJitterLadder) {
    const double jitter = level * scale;
    Eigen::LLT<Matrix> llt;
    if (jitter == 0.0) {
      llt.compute(a);
    } else {
      Matrix shifted = a;
      shifted.diagonal().array() += jitter;
      llt.compute(shifted);
    }
    if (llt.info() != Eigen::Success) continue;
    const auto diag = llt.matrixLLT().diagonal();
    if ((diag.array() > 0.0).all() && diag.allFinite()) return CholeskyFactor(std::move(llt), jitter);
  }
  throw NotPositiveDefinite("cholesky: matrix of size " + std::to_string(n) +
                            " is not positive definite after jitter " +
                            std::to_string(kJitterLadder[3]) + " * mean(diag)");
}

Vector solve(const CholeskyFactor& factor, const Vector& b) {
  if (b.size() != factor.size()) {
    throw DimensionMismatch("solve", static_cast<std::size_t>(factor.size()),
                            static_cast<std::size_t>(b.size()));
  }
  return factor.llt().solve(b);
}

Matrix solve(const CholeskyFactor& factor, const Matrix& b) {
  if (b.rows() != factor.size()) {
    throw DimensionMismatch("solve", static_cast<std::size_t>(factor.size()),
                            static_cast<std::size_t>(b.rows()));
  }
  return factor.llt().solve(b);
}

}  // namespace gpnn
