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


#ifndef GPNN_OAKLEY_HPP_
#define GPNN_OAKLEY_HPP_

#include <cstddef>
#include <string>

#include "gpnn/data.hpp"
#include "gpnn/random.hpp"
#include "gpnn/types.hpp"

namespace gpnn {

inline constexpr std::size_t kOakleyDim = 15;

// f(x) = a1'x + a2' sin(x) + a3' cos(x) + x' M x
struct OakleyCoefficients {
  Vector a1;
  Vector a2;
  Vector a3;
  Matrix M;
};

// Text format: '#' comments, then sections headed "a1", "a2", "a3" (15
// values each) and "M" (15 rows of 15). Throws DataError when the file is
// missing or malformed.
OakleyCoefficients load_oakley_coefficients(const std::string& path);

double oakley_ohagan(const OakleyCoefficients& coeffs, Point x);

// x ~ N(0, I_15); y = f(x) + Laplace noise of variance noise_var.
Dataset gen_oakley_ohagan(std::size_t n, double noise_var, RandomStream& rng,
                          const OakleyCoefficients& coeffs);

}  // namespace gpnn

#endif  // GPNN_OAKLEY_HPP_
