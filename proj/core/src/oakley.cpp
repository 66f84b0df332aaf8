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


#include "gpnn/oakley.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "gpnn/error.hpp"

namespace gpnn {
namespace {

void read_values(std::istream& in, double* out, std::size_t count, const std::string& what,
                 const std::string& path) {
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> out[i]) || !std::isfinite(out[i])) {
      throw DataError(path + ": section " + what + " needs " + std::to_string(count) +
                      " finite values");
    }
  }
}

}  // namespace

OakleyCoefficients load_oakley_coefficients(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open coefficient file " + path);
  std::stringstream body;
  std::string line;
  while (std::getline(file, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    body << line << '\n';
  }

  OakleyCoefficients c;
  c.a1 = Vector::Zero(kOakleyDim);
  c.a2 = Vector::Zero(kOakleyDim);
  c.a3 = Vector::Zero(kOakleyDim);
  c.M = Matrix::Zero(kOakleyDim, kOakleyDim);
  bool seen[4] = {false, false, false, false};
  std::string tag;
  while (body >> tag) {
    if (tag == "a1") {
      read_values(body, c.a1.data(), kOakleyDim, tag, path);
      seen[0] = true;
    } else if (tag == "a2") {
      read_values(body, c.a2.data(), kOakleyDim, tag, path);
      seen[1] = true;
    } else if (tag == "a3") {
      read_values(body, c.a3.data(), kOakleyDim, tag, path);
      seen[2] = true;
    } else if (tag == "M") {
      for (std::size_t r = 0; r < kOakleyDim; ++r) {
        double row[kOakleyDim];
        read_values(body, row, kOakleyDim, tag, path);
        for (std::size_t k = 0; k < kOakleyDim; ++k) {
          c.M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = row[k];
        }
      }
      seen[3] = true;
    } else {
      throw DataError(path + ": unexpected token '" + tag + "'");
    }
  }
  for (bool s : seen) {
    if (!s) throw DataError(path + ": expected sections a1, a2, a3 and M");
  }
  return c;
}

double oakley_ohagan(const OakleyCoefficients& c, Point x) {
  if (x.size() != kOakleyDim) throw DimensionMismatch("oakley_ohagan", kOakleyDim, x.size());
  const Vector v = as_vector(x);
  return c.a1.dot(v) + c.a2.dot(v.array().sin().matrix()) + c.a3.dot(v.array().cos().matrix()) +
         v.dot(c.M * v);
}

Dataset gen_oakley_ohagan(std::size_t n, double noise_var, RandomStream& rng,
                          const OakleyCoefficients& coeffs) {
  if (n == 0) throw InvalidArgument("gen_oakley_ohagan: n must be positive");
  if (!(noise_var >= 0.0) || !std::isfinite(noise_var)) {
    throw InvalidArgument("gen_oakley_ohagan: noise_var must be finite and >= 0");
  }
  Dataset data;
  data.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kOakleyDim));
  data.y.resize(static_cast<Eigen::Index>(n));
  const double scale = std::sqrt(noise_var / 2.0);
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    for (Eigen::Index k = 0; k < data.x.cols(); ++k) data.x(i, k) = rng.normal();
    data.y(i) = oakley_ohagan(coeffs, row_of(data.x, i));
    if (scale > 0.0) data.y(i) += rng.laplace(scale);
  }
  for (std::size_t k = 0; k < kOakleyDim; ++k) data.feature_names.push_back("x" + std::to_string(k + 1));
  data.target_name = "y";
  data.provenance = "oakley-ohagan 15d, laplace noise var " + std::to_string(noise_var);
  return data;
}

}  // namespace gpnn
