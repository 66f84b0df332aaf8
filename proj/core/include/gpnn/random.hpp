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

#ifndef GPNN_RANDOM_HPP_
#define GPNN_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace gpnn {

// Independent purposes draw from independent streams; a stream is a pure
// function of (seed, purpose, index), so work split across threads sees the
// same numbers as a serial run.
enum class StreamPurpose : std::uint64_t {
  kDesign = 1,
  kTestDesign = 2,
  kSample = 3,
  kSubset = 4,
  kCalibration = 5,
  kSplit = 6,
  kNoise = 7,
};

std::uint64_t derive_seed(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index = 0);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index = 0)
      : engine_(derive_seed(seed, purpose, index)) {}

  double normal() { return normal_(engine_); }
  // Uniform on the open interval (0, 1).
  double uniform();
  // Zero-mean Laplace with scale b (variance 2b^2).
  double laplace(double scale);
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gpnn

#endif  // GPNN_RANDOM_HPP_
